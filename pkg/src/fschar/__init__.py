"""Characters of Feigin-Stoyanovsky type subspaces of level-k sl(3)^ modules.

The same tri-graded character is computed five ways: by counting
(k, 3)-admissible configurations, by enumerating quasi-particle basis monomials,
and by three forms of the fermionic sum.
"""

from .admissible import Configuration, Weight, char_configs, enumerate_admissible, grade, is_admissible
from .errors import (
    CacheCorrupt,
    CacheMiss,
    ChargeOutOfRange,
    DimensionMismatch,
    FSCharError,
    QueryBeyondCutoff,
    UnsupportedWeight,
)
from .fermionic import (
    binom_matrix_det,
    build_L,
    build_Q,
    build_R,
    char_fermionic_georgiev,
    char_fermionic_M,
    char_fermionic_N,
    exponent,
)
from .quasiparticle import (
    ChargeProfile,
    QPMonomial,
    QuasiParticle,
    char_qp,
    compare,
    dmax,
    dmax_level1,
    dual_charges,
    enumerate_basis,
    minimal_monomial,
    satisfies_basis,
)
from .runner import VerificationReport, run_characters, verify
from .series import GradeKey, TriGradedSeries, add, coeff, equal_up_to, inv_pochhammer, make_constant, mul, mul_monomial

__version__ = "0.1.0"
