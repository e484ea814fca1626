from setuptools import setup

# Legacy shim for editable installs; metadata lives in pyproject.toml
setup()
