#!/usr/bin/env python
"""Download german.data and the MNIST IDX files into a local directory."""

import argparse
import logging
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", default=None, help="Target directory (default: WORKBENCH_DATA_DIR)")
    parser.add_argument("--only", choices=["credit", "mnist"], default=None)
    parser.add_argument("--overwrite", action="store_true")
    args = parser.parse_args()

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.development")
    import django

    django.setup()

    from django.conf import settings

    from common.downloads import DatasetDownloader
    from common.exceptions import DatasetDownloadError

    logger = logging.getLogger("common.downloads")
    downloader = DatasetDownloader()
    dest = Path(args.dest) if args.dest else settings.WORKBENCH_DATA_DIR
    try:
        files = []
        if args.only in (None, "credit"):
            files.append(downloader.fetch_german_credit(dest / "german_credit", args.overwrite))
        if args.only in (None, "mnist"):
            files.extend(downloader.fetch_mnist(dest / "mnist", args.overwrite))
    except DatasetDownloadError as e:
        logger.error(f"{e.default_code}: {e.detail}")
        return DatasetDownloadError.exit_code

    for item in files:
        state = "present" if item.skipped else "downloaded"
        sys.stdout.write(f"{item.path} ({item.size} bytes, {state})\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
