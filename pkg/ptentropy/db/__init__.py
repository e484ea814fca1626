"""Reference data for ptentropy."""
