"""Tests for the ptentropy package."""
