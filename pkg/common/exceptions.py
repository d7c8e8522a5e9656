import logging

from rest_framework.exceptions import ValidationError

logger = logging.getLogger(__name__)

USAGE_EXIT_CODE = 2


class WorkbenchError(Exception):
    default_detail = "Workbench operation failed"
    default_code = "workbench_error"
    exit_code = 1

    def __init__(self, detail: str | None = None) -> None:
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class InvalidParameterError(WorkbenchError):
    default_detail = "Invalid parameter"
    default_code = "invalid_parameter"
    exit_code = 2


class InvalidModelError(WorkbenchError):
    default_detail = "Invalid QUBO model"
    default_code = "invalid_model"
    exit_code = 3


class DimensionMismatchError(WorkbenchError):
    default_detail = "Dimension mismatch"
    default_code = "dimension_mismatch"
    exit_code = 3


class ProblemTooLargeError(WorkbenchError):
    default_detail = "Problem too large for exhaustive search"
    default_code = "problem_too_large"
    exit_code = 3


class MalformedDatasetError(WorkbenchError):
    default_detail = "Malformed dataset"
    default_code = "malformed_dataset"
    exit_code = 4


class DatasetNotFoundError(WorkbenchError):
    default_detail = "File not found"
    default_code = "file_not_found"
    exit_code = 5


class InsufficientDataError(WorkbenchError):
    default_detail = "Not enough data to continue"
    default_code = "insufficient_data"
    exit_code = 6


class DatasetDownloadError(WorkbenchError):
    default_detail = "Dataset download failed"
    default_code = "download_failed"
    exit_code = 7


def command_exception_handler(exc: Exception) -> tuple[int, str]:
    """
    Map an exception raised during a run to an exit code and a diagnostic line.

    Args:
        exc: The exception that aborted the run

    Returns:
        Tuple of (exit code, "<code>: <message>" diagnostic)
    """
    if isinstance(exc, WorkbenchError):
        return exc.exit_code, f"{exc.default_code}: {exc.detail}"

    if isinstance(exc, ValidationError):
        return USAGE_EXIT_CODE, f"invalid_options: {_flatten_detail(exc.detail)}"

    if isinstance(exc, FileNotFoundError):
        return DatasetNotFoundError.exit_code, f"file_not_found: {exc.filename or exc}"

    logger.error("Unhandled exception: %s", exc, exc_info=True)
    return WorkbenchError.exit_code, f"{WorkbenchError.default_code}: {exc}"


def _flatten_detail(detail: object) -> str:
    if isinstance(detail, dict):
        return "; ".join(f"{key}: {_flatten_detail(value)}" for key, value in detail.items())
    if isinstance(detail, list):
        return ", ".join(_flatten_detail(item) for item in detail)
    return str(detail)
