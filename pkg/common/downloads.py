"""Dataset download client used by scripts/fetch_datasets.py."""

import logging
from dataclasses import dataclass
from pathlib import Path

import httpx
from django.conf import settings
from tenacity import (
    retry,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential,
)

from common.artifacts import atomic_write_bytes
from common.exceptions import DatasetDownloadError

logger = logging.getLogger(__name__)

MNIST_FILES = (
    "train-images-idx3-ubyte.gz",
    "train-labels-idx1-ubyte.gz",
    "t10k-images-idx3-ubyte.gz",
    "t10k-labels-idx1-ubyte.gz",
)


@dataclass
class DownloadedFile:
    """A dataset file stored on disk."""

    path: Path
    url: str
    size: int
    skipped: bool = False


class DatasetDownloader:
    """Fetches the public dataset files with retry support."""

    def __init__(
        self,
        timeout: int | None = None,
        transport: httpx.BaseTransport | None = None,
    ):
        """
        Initialize the downloader.

        Args:
            timeout: Read timeout in seconds (defaults to settings.DATASET_FETCH_TIMEOUT)
            transport: Optional httpx transport (tests pass httpx.MockTransport)
        """
        read_timeout = timeout or settings.DATASET_FETCH_TIMEOUT
        self.timeout = httpx.Timeout(
            connect=10.0,
            read=float(read_timeout),
            write=10.0,
            pool=5.0,
        )
        self.transport = transport

    @retry(  # type: ignore[untyped-decorator]
        stop=stop_after_attempt(3),
        wait=wait_exponential(multiplier=1, min=2, max=30),
        retry=retry_if_exception_type((httpx.TimeoutException, httpx.NetworkError)),
        reraise=True,
    )
    def _get(self, url: str) -> bytes:
        with httpx.Client(timeout=self.timeout, transport=self.transport, follow_redirects=True) as client:
            response = client.get(url)
            response.raise_for_status()
            return response.content

    def fetch(self, url: str, destination: Path, overwrite: bool = False) -> DownloadedFile:
        """
        Download one file to destination (atomically).

        Args:
            url: Source URL
            destination: Target file path
            overwrite: Re-download even when the file exists

        Returns:
            DownloadedFile describing the stored file

        Raises:
            DatasetDownloadError: If the download fails after retries
        """
        if destination.exists() and not overwrite:
            logger.info(f"{destination} already present, skipping")
            return DownloadedFile(destination, url, destination.stat().st_size, skipped=True)

        logger.info(f"Downloading {url}")
        try:
            data = self._get(url)
        except httpx.HTTPStatusError as e:
            logger.error(f"Download error: {e.response.status_code} for {url}")
            raise DatasetDownloadError(f"HTTP {e.response.status_code} for {url}") from e
        except httpx.TimeoutException as e:
            logger.error(f"Download of {url} timed out")
            raise DatasetDownloadError(f"Timed out fetching {url}") from e
        except httpx.NetworkError as e:
            logger.error(f"Network error fetching {url}: {e}")
            raise DatasetDownloadError(f"Network error: {e}") from e

        atomic_write_bytes(destination, data)
        return DownloadedFile(destination, url, len(data))

    def fetch_german_credit(self, directory: Path, overwrite: bool = False) -> DownloadedFile:
        return self.fetch(settings.GERMAN_CREDIT_URL, directory / "german.data", overwrite)

    def fetch_mnist(self, directory: Path, overwrite: bool = False) -> list[DownloadedFile]:
        base = settings.MNIST_BASE_URL.rstrip("/") + "/"
        return [self.fetch(base + name, directory / name, overwrite) for name in MNIST_FILES]
