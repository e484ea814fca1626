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
"""Config file loading.

A config file is flat ``key = value`` text. Keys are the long flag names
(``-`` and ``_`` are interchangeable); ``#`` starts a comment.
"""

import logging
import os

from ..config import CONFIG_KEYS
from ..errors import InvalidRunConfig

logger = logging.getLogger(__name__)


def validate_keys(values):
    """Validate that every key of a parsed config is known.

    Args:
        values: Mapping of config keys to values

    Raises:
        InvalidRunConfig: If unknown keys are present
    """
    unknown = [key for key in values if key not in CONFIG_KEYS]
    if unknown:
        raise InvalidRunConfig(
            f"Unknown config keys: {'  '.join(unknown)}\n"
            f"Accepted keys: {'  '.join(CONFIG_KEYS)}"
        )


def parse_config_text(text, source="<config>"):
    """Parse flat key-value text into typed values.

    Args:
        text: Config file contents
        source: Name used in error messages

    Returns:
        dict of parsed values keyed by config key
    """
    raw = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidRunConfig(f"{source}:{number}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        raw[key.replace("-", "_")] = value

    validate_keys(raw)
    values = {}
    for key, value in raw.items():
        try:
            values[key] = CONFIG_KEYS[key](value)
        except ValueError as e:
            raise InvalidRunConfig(f"{source}: invalid value for {key}: {value!r} ({e})") from None
    return values


def load_config(file_path):
    """Load a run configuration file.

    Args:
        file_path: Path to the config file

    Returns:
        dict of parsed values
    """
    if not os.path.isfile(file_path):
        raise InvalidRunConfig(f"Config file not found: {file_path}")
    logger.debug(f"Loading config from {file_path}")
    with open(file_path, encoding="utf-8") as handle:
        values = parse_config_text(handle.read(), source=file_path)
    logger.info(f"Loaded {len(values)} settings from {file_path}")
    return values
