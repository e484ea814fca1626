"""Input/Output module for ptentropy."""
