"""Exception types shared across the package."""


class FacePrefError(Exception):
    """Base class for all package-specific errors."""


class DataFormatError(FacePrefError):
    """Malformed dataset input: bad header, wrong vector length, duplicate
    (profile_id, image_index), or an unknown label token."""


class EmptyProfileError(FacePrefError):
    """Feature construction requested for a profile with no face embeddings."""


class SingleClassError(FacePrefError):
    """Training or splitting requires both classes to be present."""


class ConvergenceError(FacePrefError):
    """Optimizer did not reach the requested tolerance within max_iter."""

    def __init__(self, message: str, gradient_norm: float | None = None):
        super().__init__(message)
        self.gradient_norm = gradient_norm


class DivergenceError(FacePrefError):
    """Training loss became non-finite."""


class FeatureMismatchError(FacePrefError):
    """Input vector width or feature mode does not match the model."""


class ModelFormatError(FacePrefError):
    """Model payload is corrupt or structurally invalid."""


class ModelVersionError(ModelFormatError):
    """Model payload was written by an unsupported format version."""


class ProviderError(FacePrefError):
    """Base class for embedding-provider client failures."""


class ProviderUnreachableError(ProviderError):
    """Provider could not be reached after the configured retries."""


class ProviderResponseError(ProviderError):
    """Provider returned a malformed or non-contractual response."""


class ProviderDimensionError(ProviderError):
    """Provider embedding dimension differs from the dataset dimension."""


class UnknownProfileError(FacePrefError):
    """Profile id not present in the dataset."""


class TrainingInProgressError(FacePrefError):
    """A training job is already running."""
