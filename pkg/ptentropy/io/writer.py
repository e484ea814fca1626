# Copyright 2026 ptentropy Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Result writing.

Tables are rendered with a fixed float format so that identical inputs give
byte-identical files, and files are replaced atomically.
"""

import json
import logging
import math
import os
import tempfile

import numpy as np

from .. import __version__

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"
FORMATS = ("csv", "json")


def header_line(context=""):
    """Comment line identifying the producer and parameters."""
    text = f"# ptentropy {__version__}"
    return f"{text} {context}".rstrip()


def _clean(value):
    """JSON-safe scalar: numpy types unwrapped, non-finite floats as null."""
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {key: _clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item) for item in value]
    return value


def render_json(payload):
    return json.dumps(_clean(payload), sort_keys=True, indent=2) + "\n"


def table_payload(df, context=""):
    """JSON-ready dict of one table with its producer line."""
    return {
        "producer": header_line(context)[2:],
        "columns": list(df.columns),
        "rows": df.to_dict(orient="records"),
    }


def render_table(df, fmt="csv", context=""):
    """Render a DataFrame as CSV (with header comment) or JSON.

    Args:
        df: Table to render
        fmt: 'csv' or 'json'
        context: Parameter description for the header

    Returns:
        Rendered text
    """
    if fmt == "csv":
        body = df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return header_line(context) + "\n" + body
    if fmt == "json":
        return render_json(table_payload(df, context))
    raise ValueError(f"Unsupported output format: {fmt}. Supported formats: {', '.join(FORMATS)}")


def atomic_write(text, file_path):
    """Write text to file_path through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(file_path))
    os.makedirs(directory, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=directory, prefix=".ptentropy-", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, file_path)
    except OSError as e:
        if os.path.exists(handle.name):
            os.remove(handle.name)
        logger.error(f"Error saving data: {str(e)}")
        raise ValueError(f"Could not save data to {file_path}: {str(e)}")
    logger.debug(f"Wrote {len(text)} bytes to {file_path}")


def save_table(df, file_path, fmt="csv", context=""):
    atomic_write(render_table(df, fmt, context), file_path)
    logger.info(f"Saved {len(df)} rows to {file_path}")
