"""Exception types shared across the package."""


class ObbsegError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveSize(ObbsegError, ValueError):
    """A box side, image dimension, or kernel parameter is <= 0."""


class NonFinite(ObbsegError, ValueError):
    """NaN or Inf where a finite value is required."""


class EmptyMask(ObbsegError, ValueError):
    """A mask with no foreground pixels where at least one is required."""


class DimMismatch(ObbsegError, ValueError):
    """Operands have incompatible shapes."""


class InvalidPolygon(ObbsegError, ValueError):
    """Polygon is degenerate, non-convex, or wrongly oriented."""


class InvalidConfig(ObbsegError, ValueError):
    """Configuration value outside its allowed range."""


class EvenKernel(ObbsegError, ValueError):
    """Gaussian kernel length must be odd."""


class NonPositiveSigma(ObbsegError, ValueError):
    """Gaussian standard deviation must be > 0."""


class KernelLargerThanInput(ObbsegError, ValueError):
    """Smoothing kernel does not fit the input being smoothed."""


class PlacementFailure(ObbsegError, RuntimeError):
    """Rejection sampling could not place an instance under the overlap cap."""


class EmptyDataset(ObbsegError, ValueError):
    """Training or evaluation requires at least one scene."""


class DivergenceDetected(ObbsegError, RuntimeError):
    """Training loss became NaN or Inf."""


class ObtError(ObbsegError, ValueError):
    """Base class for tensor-container format errors."""


class BadMagic(ObtError):
    """File does not start with the OBT1 magic."""


class TruncatedFile(ObtError):
    """File ended before the declared payload."""


class DuplicateName(ObtError):
    """Two tensors in one container share a name."""


class UnknownDtype(ObtError):
    """Dtype tag not in the supported set."""
