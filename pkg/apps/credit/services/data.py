"""German Credit ingestion, one-hot expansion and standardization."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import numpy as np

from common.exceptions import (
    DatasetNotFoundError,
    DimensionMismatchError,
    InsufficientDataError,
    MalformedDatasetError,
)

logger = logging.getLogger(__name__)

# Standard deviations below this count as constant columns
_ZERO_VARIANCE = 1e-12


class AttributeKind(StrEnum):
    CATEGORICAL = "categorical"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: AttributeKind
    description: str


ATTRIBUTES: tuple[Attribute, ...] = (
    Attribute("checking_status", AttributeKind.CATEGORICAL, "status of existing checking account"),
    Attribute("duration", AttributeKind.NUMERIC, "duration in months"),
    Attribute("credit_history", AttributeKind.CATEGORICAL, "credit history"),
    Attribute("purpose", AttributeKind.CATEGORICAL, "purpose"),
    Attribute("credit_amount", AttributeKind.NUMERIC, "credit amount"),
    Attribute("savings", AttributeKind.CATEGORICAL, "savings account/bonds"),
    Attribute("employment_since", AttributeKind.CATEGORICAL, "present employment since"),
    Attribute("installment_rate", AttributeKind.NUMERIC, "installment rate in percentage of disposable income"),
    Attribute("personal_status", AttributeKind.CATEGORICAL, "personal status and sex"),
    Attribute("other_debtors", AttributeKind.CATEGORICAL, "other debtors / guarantors"),
    Attribute("residence_since", AttributeKind.NUMERIC, "present residence since (residence duration)"),
    Attribute("property", AttributeKind.CATEGORICAL, "property"),
    Attribute("age", AttributeKind.NUMERIC, "age in years"),
    Attribute("other_installment_plans", AttributeKind.CATEGORICAL, "other installment plans"),
    Attribute("housing", AttributeKind.CATEGORICAL, "housing"),
    Attribute("existing_credits", AttributeKind.NUMERIC, "number of existing credits at this bank"),
    Attribute("job", AttributeKind.CATEGORICAL, "job"),
    Attribute("people_liable", AttributeKind.NUMERIC, "number of people being liable to provide maintenance for"),
    Attribute("telephone", AttributeKind.CATEGORICAL, "telephone"),
    Attribute("foreign_worker", AttributeKind.CATEGORICAL, "foreign worker"),
)

CODE_LABELS: dict[str, str] = {
    "A11": "checking < 0 DM",
    "A12": "0 <= checking < 200 DM",
    "A13": "checking >= 200 DM / salary assignments",
    "A14": "no checking account",
    "A30": "no credits taken / all paid back duly",
    "A31": "all credits at this bank paid back duly",
    "A32": "existing credits paid back duly till now",
    "A33": "delay in paying off in the past",
    "A34": "critical account / other credits existing",
    "A40": "car (new)",
    "A41": "car (used)",
    "A42": "furniture/equipment",
    "A43": "radio/television",
    "A44": "domestic appliances",
    "A45": "repairs",
    "A46": "education",
    "A47": "vacation",
    "A48": "retraining",
    "A49": "business",
    "A410": "others",
    "A61": "savings < 100 DM",
    "A62": "100 <= savings < 500 DM",
    "A63": "500 <= savings < 1000 DM",
    "A64": "savings >= 1000 DM",
    "A65": "unknown / no savings account",
    "A71": "unemployed",
    "A72": "employed < 1 year",
    "A73": "employed 1 to 4 years",
    "A74": "employed 4 to 7 years",
    "A75": "employed >= 7 years",
    "A91": "male: divorced/separated",
    "A92": "female: divorced/separated/married",
    "A93": "male: single",
    "A94": "male: married/widowed",
    "A95": "female: single",
    "A101": "none",
    "A102": "co-applicant",
    "A103": "guarantor",
    "A121": "real estate",
    "A122": "building society savings / life insurance",
    "A123": "car or other",
    "A124": "unknown / no property",
    "A141": "bank",
    "A142": "stores",
    "A143": "none",
    "A151": "rent",
    "A152": "own",
    "A153": "for free",
    "A171": "unemployed / unskilled non-resident",
    "A172": "unskilled resident",
    "A173": "skilled employee / official",
    "A174": "management / self-employed / highly qualified",
    "A191": "none",
    "A192": "yes, registered under the customer's name",
    "A201": "yes",
    "A202": "no",
}

# Outcome column: 1 = good (low risk), 2 = bad (high risk)
OUTCOME_LABELS = {"1": 0, "2": 1}

Value = str | int


@dataclass(frozen=True)
class RawCreditRecord:
    attributes: tuple[Value, ...]
    label: int


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """
    Expanded design matrix. Categorical columns are named `<attribute>=<code>`,
    numeric columns carry the attribute name.
    """

    names: tuple[str, ...]
    values: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        if values.ndim != 2 or values.shape[1] != len(self.names):
            raise DimensionMismatchError(f"{len(self.names)} name(s) for values of shape {values.shape}")
        if labels.shape != (values.shape[0],):
            raise DimensionMismatchError(f"{values.shape[0]} row(s) but labels of shape {labels.shape}")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @property
    def rows(self) -> int:
        return int(self.values.shape[0])

    def take(self, rows: Sequence[int] | np.ndarray) -> "FeatureMatrix":
        rows = np.asarray(rows, dtype=np.int64)
        return FeatureMatrix(self.names, self.values[rows], self.labels[rows])

    def restrict(self, names: Sequence[str]) -> "FeatureMatrix":
        """Keep the named columns in the given order."""
        index = {name: k for k, name in enumerate(self.names)}
        missing = [name for name in names if name not in index]
        if missing:
            raise DimensionMismatchError(f"Unknown feature(s): {missing}")
        columns = [index[name] for name in names]
        return FeatureMatrix(tuple(names), self.values[:, columns], self.labels)


def feature_label(name: str) -> str:
    """Readable label, e.g. 'other_debtors=A103' -> 'other_debtors: guarantor'."""
    attribute, _, code = name.partition("=")
    if not code:
        return attribute
    return f"{attribute}: {CODE_LABELS.get(code, code)}"


def parse_german_data(text: str) -> list[RawCreditRecord]:
    """
    Parse the whitespace-separated `german.data` format.

    Each non-blank line holds 20 attribute values followed by the outcome
    (1 = good, 2 = bad). Categorical values are codes such as 'A11',
    numeric values are integers.

    Raises:
        MalformedDatasetError: On a wrong field count, a bad value or an unknown outcome
    """
    records: list[RawCreditRecord] = []
    width = len(ATTRIBUTES) + 1
    for line_no, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != width:
            raise MalformedDatasetError(f"Line {line_no}: expected {width} fields, got {len(fields)}")
        if fields[-1] not in OUTCOME_LABELS:
            raise MalformedDatasetError(f"Line {line_no}: unknown outcome code {fields[-1]!r}")

        values: list[Value] = []
        for attribute, raw in zip(ATTRIBUTES, fields[:-1], strict=True):
            if attribute.kind == AttributeKind.CATEGORICAL:
                if not raw.startswith("A"):
                    raise MalformedDatasetError(f"Line {line_no}: {attribute.name} code {raw!r} is not categorical")
                values.append(raw)
            else:
                try:
                    values.append(int(raw))
                except ValueError as e:
                    raise MalformedDatasetError(f"Line {line_no}: {attribute.name} value {raw!r} is not an integer") from e
        records.append(RawCreditRecord(tuple(values), OUTCOME_LABELS[fields[-1]]))

    logger.debug(f"Parsed {len(records)} credit record(s)")
    return records


def read_german_data(path: Path) -> list[RawCreditRecord]:
    if not path.is_file():
        raise DatasetNotFoundError(f"Dataset file {path} does not exist")
    return parse_german_data(path.read_text(encoding="ascii"))


def one_hot_standardize(
    records: Sequence[RawCreditRecord],
    *,
    reference_rows: Sequence[int] | np.ndarray | None = None,
) -> FeatureMatrix:
    """
    Expand categorical attributes to one column per observed code and z-score
    numeric attributes.

    Args:
        records: Parsed records
        reference_rows: Rows whose mean and standard deviation are used for
            z-scoring (all rows when omitted, the training rows in the pipeline)

    Returns:
        FeatureMatrix in attribute order, codes sorted within each attribute

    Raises:
        InsufficientDataError: If there are no records
    """
    if not records:
        raise InsufficientDataError("Cannot build features from an empty record set")
    reference = np.arange(len(records)) if reference_rows is None else np.asarray(reference_rows, dtype=np.int64)
    if reference.size == 0:
        raise InsufficientDataError("Standardization needs at least one reference row")

    names: list[str] = []
    columns: list[np.ndarray] = []
    for k, attribute in enumerate(ATTRIBUTES):
        raw = [record.attributes[k] for record in records]
        if attribute.kind == AttributeKind.CATEGORICAL:
            codes = np.asarray(raw, dtype=str)
            for code in sorted(set(codes), key=lambda c: (len(c), c)):
                names.append(f"{attribute.name}={code}")
                columns.append((codes == code).astype(np.float64))
        else:
            column = np.asarray(raw, dtype=np.float64)
            mean = column[reference].mean()
            std = column[reference].std()
            names.append(attribute.name)
            columns.append((column - mean) / std if std > _ZERO_VARIANCE else np.zeros_like(column))

    matrix = FeatureMatrix(
        tuple(names),
        np.column_stack(columns),
        np.array([record.label for record in records], dtype=np.int64),
    )
    logger.info(f"Expanded {len(ATTRIBUTES)} attributes into {len(names)} feature column(s)")
    return matrix
