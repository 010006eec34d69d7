"""HTTP client for the external embedding-provider service.

The provider owns face detection and the embedding network; this engine
only consumes its wire contract: ``POST /embed`` with raw image bytes,
answered by ``{"status": "ok"|"no_face"|"multi_face", "dim": D,
"values": [...]}``. The provider's documented detection constants (minimum
face 60x60 px, detection threshold 0.8, 182x182 px crop with a 44 px
margin) are part of that contract and are not enforced here.

``no_face`` and ``multi_face`` are ordinary outcomes, not errors: such
images are simply skipped.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import httpx
import numpy as np

from .errors import (
    ProviderDimensionError,
    ProviderResponseError,
    ProviderUnreachableError,
)

#: Documented constants of the provider-side detection stage.
PROVIDER_MIN_FACE_PX = 60
PROVIDER_DETECTION_THRESHOLD = 0.8
PROVIDER_CROP_PX = 182
PROVIDER_CROP_MARGIN_PX = 44

SKIP_STATUSES = ("no_face", "multi_face")


@dataclass(frozen=True)
class FetchOutcome:
    """Result of one embedding request.

    ``status`` is ``ok`` (embedding present), ``no_face`` or ``multi_face``
    (image skipped).
    """

    status: str
    embedding: np.ndarray | None = None

    @property
    def skipped(self) -> bool:
        return self.status in SKIP_STATUSES


class EmbeddingClient:
    """Thread-safe client for one embedding-provider endpoint.

    Transport failures are retried ``retries`` times with a fixed backoff
    before being surfaced as :class:`ProviderUnreachableError`.
    """

    def __init__(
        self,
        base_url: str,
        expected_dim: int | None = None,
        retries: int = 3,
        backoff: float = 0.5,
        timeout: float = 30.0,
        transport: httpx.BaseTransport | None = None,
        sleep=time.sleep,
    ):
        self.expected_dim = expected_dim
        self.retries = retries
        self.backoff = backoff
        self._sleep = sleep
        self._client = httpx.Client(
            base_url=base_url, timeout=timeout, transport=transport
        )

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "EmbeddingClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def fetch_embedding(self, image: bytes) -> FetchOutcome:
        """Request the embedding for one image.

        Returns an ``ok`` outcome with the embedding, or a skip outcome for
        images the provider could not reduce to exactly one face.
        """
        response = self._post_with_retries(image)
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProviderResponseError(f"provider sent non-JSON body: {exc}") from exc
        status = payload.get("status")
        if status in SKIP_STATUSES:
            return FetchOutcome(status=status)
        if status != "ok":
            raise ProviderResponseError(f"unknown provider status {status!r}")

        try:
            dim = int(payload["dim"])
            values = np.asarray(payload["values"], dtype=np.float64)
        except (KeyError, TypeError, ValueError) as exc:
            raise ProviderResponseError(f"malformed provider response: {exc}") from exc
        if values.ndim != 1 or values.shape[0] != dim:
            raise ProviderResponseError(
                f"provider declared dim={dim} but sent {values.shape} values"
            )
        if not np.all(np.isfinite(values)):
            raise ProviderResponseError("provider sent non-finite embedding values")
        if self.expected_dim is not None and dim != self.expected_dim:
            raise ProviderDimensionError(
                f"provider dimension {dim} does not match dataset "
                f"dimension {self.expected_dim}"
            )
        return FetchOutcome(status="ok", embedding=values)

    def _post_with_retries(self, image: bytes) -> httpx.Response:
        last_exc: Exception | None = None
        for attempt in range(self.retries + 1):
            if attempt:
                self._sleep(self.backoff)
            try:
                response = self._client.post(
                    "/embed",
                    content=image,
                    headers={"content-type": "application/octet-stream"},
                )
            except httpx.TransportError as exc:
                last_exc = exc
                continue
            if response.status_code >= 500:
                last_exc = ProviderResponseError(
                    f"provider returned HTTP {response.status_code}"
                )
                continue
            if response.status_code != 200:
                raise ProviderResponseError(
                    f"provider returned HTTP {response.status_code}"
                )
            return response
        raise ProviderUnreachableError(
            f"provider unreachable after {self.retries + 1} attempts: {last_exc}"
        )
