"""Exact constructions of code pairs whose dual enumerators separate.

Typical use::

    from dualbreak import build_field, WeightFn, build_certificate, verify_certificate

    F = build_field(5)
    w = WeightFn(F, [0, 1, 4, 4, 1])
    cert = build_certificate(w)
    assert verify_certificate(cert).ok
"""

__version__ = "0.1.0"

from .finite_field import FiniteField, FieldError, build_field  # noqa: E402
from .weights import (  # noqa: E402
    WeightError,
    WeightFn,
    main_theorem_hypotheses,
    power_weight,
    scan_power_weights,
)
from .orbits import OrbitFrame, build_frame  # noqa: E402
from .structured import build_A, invert_A  # noqa: E402
from .codes import (  # noqa: E402
    Certificate,
    ConstructionError,
    HypothesisFailure,
    build_certificate,
    verify_certificate,
)
from .enumerators import (  # noqa: E402
    brute_force_dual,
    dual_wwe,
    kravchuk,
    macwilliams_transform,
    symmetrized_enumerator,
)
from .kernels import BACKEND  # noqa: E402

__all__ = [
    "__version__",
    "BACKEND",
    "FiniteField",
    "FieldError",
    "build_field",
    "WeightError",
    "WeightFn",
    "main_theorem_hypotheses",
    "power_weight",
    "scan_power_weights",
    "OrbitFrame",
    "build_frame",
    "build_A",
    "invert_A",
    "Certificate",
    "ConstructionError",
    "HypothesisFailure",
    "build_certificate",
    "verify_certificate",
    "brute_force_dual",
    "dual_wwe",
    "kravchuk",
    "macwilliams_transform",
    "symmetrized_enumerator",
]
