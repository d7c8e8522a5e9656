"""Line-oriented QUBO text format.

    n <dim>
    offset <c>            (optional)
    lin <i> <coef>
    quad <i> <j> <coef>   (i < j on write)

Blank lines and lines starting with '#' are ignored.
"""

import logging
from pathlib import Path

from common.artifacts import atomic_write_bytes
from common.exceptions import DatasetNotFoundError, InvalidModelError, MalformedDatasetError

from .model import Pair, QuboModel

logger = logging.getLogger(__name__)


def parse_qubo(text: str) -> QuboModel:
    n: int | None = None
    offset = 0.0
    linear: dict[int, float] = {}
    quadratic: dict[Pair, float] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        try:
            if tag == "n" and len(fields) == 2:
                n = int(fields[1])
            elif tag == "offset" and len(fields) == 2:
                offset = float(fields[1])
            elif tag == "lin" and len(fields) == 3:
                index = int(fields[1])
                linear[index] = linear.get(index, 0.0) + float(fields[2])
            elif tag == "quad" and len(fields) == 4:
                pair = (int(fields[1]), int(fields[2]))
                quadratic[pair] = quadratic.get(pair, 0.0) + float(fields[3])
            else:
                raise MalformedDatasetError(f"line {lineno}: unrecognised record {line!r}")
        except ValueError as e:
            raise MalformedDatasetError(f"line {lineno}: {e}") from e

    if n is None:
        raise MalformedDatasetError("missing 'n <dim>' header")

    try:
        return QuboModel(n=n, linear=linear, quadratic=quadratic, offset=offset)
    except InvalidModelError as e:
        raise MalformedDatasetError(str(e.detail)) from e


def format_qubo(model: QuboModel) -> str:
    lines = [f"n {model.n}"]
    if model.offset:
        lines.append(f"offset {model.offset!r}")
    lines.extend(f"lin {i} {coef!r}" for i, coef in model.linear.items() if coef)
    lines.extend(f"quad {i} {j} {coef!r}" for (i, j), coef in model.quadratic.items())
    return "\n".join(lines) + "\n"


def read_qubo_file(path: Path) -> QuboModel:
    if not path.is_file():
        raise DatasetNotFoundError(f"QUBO file {path} does not exist")
    model = parse_qubo(path.read_text(encoding="utf-8"))
    logger.debug(f"Read QUBO with n={model.n}, {len(model.quadratic)} pair(s) from {path}")
    return model


def write_qubo_file(model: QuboModel, path: Path) -> Path:
    return atomic_write_bytes(path, format_qubo(model).encode("utf-8"))
