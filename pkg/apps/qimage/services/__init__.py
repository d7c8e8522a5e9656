"""Image preprocessing and quantum encoding services."""

from .dataset import DigitDataset, dataset_manifest, dataset_to_bytes, load_dataset, preprocess_digits
from .encoding import (
    angle_field,
    compressed_angle,
    compressed_color_angles,
    compressed_state,
    encode_circuit,
    frqi_state,
)
from .idx import (
    IMAGES_MAGIC,
    LABELS_MAGIC,
    format_idx,
    parse_idx,
    read_idx,
    read_mnist_images,
    read_mnist_labels,
)
from .preprocessing import BinaryImage, GrayImage, bilinear_downsample, binarize, preprocess, resample

__all__ = [
    "GrayImage",
    "BinaryImage",
    "bilinear_downsample",
    "binarize",
    "resample",
    "preprocess",
    "angle_field",
    "frqi_state",
    "compressed_angle",
    "compressed_color_angles",
    "compressed_state",
    "encode_circuit",
    "IMAGES_MAGIC",
    "LABELS_MAGIC",
    "parse_idx",
    "format_idx",
    "read_idx",
    "read_mnist_images",
    "read_mnist_labels",
    "DigitDataset",
    "preprocess_digits",
    "dataset_to_bytes",
    "load_dataset",
    "dataset_manifest",
]
