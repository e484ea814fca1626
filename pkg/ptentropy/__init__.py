"""ptentropy: Von Neumann entropy in a PT-symmetric system-bath model"""

import importlib.util
from importlib import metadata

__version__ = "1.0.0"

# Import name -> distribution name
REQUIRED_LIBRARIES = {
    "numpy": "numpy",
    "scipy": "scipy",
    "pandas": "pandas",
    "rich": "rich",
}


def check_dependencies(raise_on_missing: bool = False):
    """Report which numerical dependencies are importable.

    Args:
        raise_on_missing: Raise ImportError when any required library is missing

    Returns:
        dict with 'missing' (import names) and 'versions' (installed versions)
    """
    missing = []
    versions = {}
    for module, distribution in REQUIRED_LIBRARIES.items():
        if importlib.util.find_spec(module) is None:
            missing.append(module)
            continue
        try:
            versions[module] = metadata.version(distribution)
        except metadata.PackageNotFoundError:
            versions[module] = "unknown"
    if raise_on_missing and missing:
        raise ImportError(f"Required packages missing: {', '.join(missing)}")
    return {"missing": missing, "versions": versions}
