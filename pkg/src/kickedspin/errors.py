"""Exception types shared across the package."""


class KickedSpinError(Exception):
    """Base class for all model-specific failures."""


class DegenerateModelError(KickedSpinError):
    """The kick geometry has beta = 0: no complex degeneracy, holonomy trivial."""


class DefectivePointError(KickedSpinError):
    """The requested coupling is too close to an exceptional point."""


class UnwrapAmbiguityError(KickedSpinError):
    """Path sampling too coarse to continue a multivalued branch unambiguously."""


class InvalidPathError(KickedSpinError):
    """The path does not satisfy the contract of the requested operation."""


class SearchFailureError(KickedSpinError):
    """An iterative search (root finding) failed to converge."""


class NumericalError(KickedSpinError):
    """A numerical cross-check failed beyond its tolerance."""
