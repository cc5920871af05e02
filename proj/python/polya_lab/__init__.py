"""Python access to the polya multiprecision core."""

from ._polya import (  # noqa: F401
    DomainError,
    ParseError,
    PolyaError,
    build_operator,
    run_cli,
    sigma,
    taylor,
    verify_identity,
    zeta,
)

__all__ = [
    "DomainError",
    "ParseError",
    "PolyaError",
    "build_operator",
    "run_cli",
    "sigma",
    "taylor",
    "verify_identity",
    "zeta",
]
