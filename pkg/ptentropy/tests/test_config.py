"""Tests for settings resolution and config-file loading."""

import os
import tempfile
import unittest

from ptentropy.config import DEFAULTS, resolve_run_settings
from ptentropy.errors import InvalidRunConfig
from ptentropy.io.loader import load_config, parse_config_text


class TestResolveSettings(unittest.TestCase):
    """Precedence: flags > config file > defaults."""

    def test_defaults(self):
        self.assertEqual(resolve_run_settings(), DEFAULTS)
        self.assertEqual(resolve_run_settings()["bath_size"], [1, 2, 3, 4, 5])

    def test_precedence(self):
        file_values = {"g": 0.5, "kappa": 0.5, "samples": 11}
        flags = {"g": 0.9, "samples": None}
        settings = resolve_run_settings(flags, file_values)
        self.assertEqual(settings["g"], 0.9)
        self.assertEqual(settings["kappa"], 0.5)
        self.assertEqual(settings["samples"], 11)
        self.assertEqual(settings["nu"], DEFAULTS["nu"])

    def test_defaults_not_mutated(self):
        settings = resolve_run_settings({"bath_size": [2]})
        self.assertEqual(settings["bath_size"], [2])
        self.assertEqual(DEFAULTS["bath_size"], [1, 2, 3, 4, 5])


class TestConfigLoader(unittest.TestCase):
    """Flat key = value config files."""

    def test_parse(self):
        text = "# figure settings\ng = 0.5\nkappa=0.5\nbath-size = 1, 2  # two baths\nformat = json\n\nsamples = 101\n"
        values = parse_config_text(text)
        self.assertEqual(values, {"g": 0.5, "kappa": 0.5, "bath_size": [1, 2], "format": "json", "samples": 101})

    def test_parse_errors(self):
        with self.assertRaises(InvalidRunConfig):
            parse_config_text("colour = red")
        with self.assertRaises(InvalidRunConfig):
            parse_config_text("g 0.5")
        with self.assertRaises(InvalidRunConfig):
            parse_config_text("samples = many")

    def test_load_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "run.cfg")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write("t_end = 4\nc2 = 0.25\n")
            self.assertEqual(load_config(path), {"t_end": 4.0, "c2": 0.25})
            with self.assertRaises(InvalidRunConfig):
                load_config(os.path.join(tmp, "missing.cfg"))


if __name__ == '__main__':
    unittest.main()
