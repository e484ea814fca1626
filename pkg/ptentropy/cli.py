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
"""Command-line interface for ptentropy.

Data goes to stdout (or to ``--out``); banners, status lines and the
verification summary go to stderr. Exit codes: 0 success, 1 failed
verification, 2 invalid input.
"""

import argparse
import logging
import sys

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from . import __version__, check_dependencies
from .config import CONFIG_KEYS, resolve_run_settings
from .core import EntropyAnalyst, RunConfig
from .errors import InvalidRunConfig
from .io.loader import load_config
from .io.writer import atomic_write, render_json

COMMANDS = ("curve", "figures", "asymptote", "death-time", "spectrum", "verify")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


class PTEntropyCLI:
    def __init__(self):
        self.logger = None
        self.console = Console(stderr=True)

    def setup_logging(self, log_file=None, verbose=False, quiet=False):
        """Route ptentropy logs to stderr, and to ``log_file`` when given.

        The file handler always records DEBUG so a saved log keeps solver
        brackets and step sizes even when the console is quiet.
        """
        console_level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.INFO
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setLevel(console_level)
        handlers = [stream_handler]
        if log_file:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            handlers.append(file_handler)
        logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT, datefmt=LOG_DATEFMT,
                            handlers=handlers, force=True)
        self.logger = logging.getLogger("ptentropy")
        self.logger.setLevel(logging.DEBUG if log_file else console_level)

    def print_banner(self):
        """Print the ptentropy banner with Rich formatting."""
        self.console.print(
            Panel(Text(f"ptentropy {__version__}: entanglement entropy of a PT-symmetric system-bath model",
                       justify="center"), style="bold magenta", expand=False)
        )

    def print_status(self, message, style="green"):
        """Print status messages with Rich formatting."""
        self.console.print(f"[+] {message}", style=f"bold {style}")

    def print_help_table(self):
        """Print help information in a tabular format using Rich."""
        table = Table(show_header=True, header_style="bold blue", box=box.ROUNDED, highlight=True)
        table.add_column("Command / Option", style="bold cyan", width=30, min_width=25)
        table.add_column("Description", style="white", min_width=40)

        table.add_row("curve", "Entropy curves S(t), lambda1, lambda2, mu_I per bath size")
        table.add_row("figures", "Data of the three published figures into --out DIR")
        table.add_row("asymptote", "Broken-regime entropy floor S_inf and xi")
        table.add_row("death-time", "First time of vanishing entropy per bath size")
        table.add_row("spectrum", "Energies E+/- for m = 0..--max-level")
        table.add_row("verify", "Run the verification suite (JSON report)")
        table.add_row("--nu, --g, --kappa", "Model frequency and couplings")
        table.add_row("--c1, --c2, --gamma", "Integration constants and initial mixing angle")
        table.add_row("--bath-size", "Bath sizes, e.g. '1,2,3' (default: 1..5)")
        table.add_row("--t-start, --t-end, --samples", "Time grid (default: 0, 10, 2001)")
        table.add_row("--format", "Output format 'csv/json' (default: csv)")
        table.add_row("--out", "Output path (stdout when absent)")
        table.add_row("--scope", "Verification scope 'quick/full' (default: quick)")
        table.add_row("--max-level", "Highest excitation level for spectrum (default: 2)")
        table.add_row("--config", "Flat 'key = value' config file")
        table.add_row("-v, --verbose", "Increase output verbosity")
        table.add_row("-q, --quiet", "Suppress all non-error output")
        table.add_row("-l, --log-file", "Path to save log file")
        table.add_row("--version", "Show package version")
        table.add_row("-h, --help", "Show this help message and exit")

        self.console.print(table)

    def parse_args(self, argv=None):
        parser = argparse.ArgumentParser(
            prog="ptentropy",
            description="ptentropy: Von Neumann entropy in a PT-symmetric system-bath model",
            add_help=False
        )
        parser.add_argument("command", nargs="?", choices=COMMANDS, help="Command to run")
        parser.add_argument("-h", "--help", action="store_true", help="Show this help message and exit")
        for name in ("nu", "g", "kappa", "c1", "c2", "gamma", "t-start", "t-end"):
            parser.add_argument(f"--{name}", type=float, default=None)
        parser.add_argument("--samples", type=int, default=None)
        parser.add_argument("--bath-size", default=None, help="Comma-separated bath sizes")
        parser.add_argument("--format", choices=["csv", "json"], default=None)
        parser.add_argument("--out", "-o", default=None)
        parser.add_argument("--scope", choices=["quick", "full"], default=None)
        parser.add_argument("--max-level", type=int, default=None)
        parser.add_argument("--config", default=None)
        parser.add_argument("--tamper-mu", type=float, default=None, help=argparse.SUPPRESS)
        parser.add_argument("--verbose", "-v", action="store_true",
                            help="Increase output verbosity")
        parser.add_argument("--quiet", "-q", action="store_true",
                            help="Suppress all non-error output")
        parser.add_argument("--log-file", "-l",
                            help="Path to save log file")
        parser.add_argument("--version", action="store_true",
                            help="Show package version")
        args = parser.parse_args(argv)
        if args.verbose and args.quiet:
            parser.error("--verbose and --quiet cannot be used together")
        return args

    def resolve_settings(self, args):
        """Merge flags over the config file over the defaults."""
        flags = {
            "nu": args.nu,
            "g": args.g,
            "kappa": args.kappa,
            "c1": args.c1,
            "c2": args.c2,
            "gamma": args.gamma,
            "t_start": args.t_start,
            "t_end": args.t_end,
            "samples": args.samples,
            "format": args.format,
            "out": args.out,
            "scope": args.scope,
            "max_level": args.max_level,
        }
        if args.bath_size is not None:
            try:
                flags["bath_size"] = CONFIG_KEYS["bath_size"](args.bath_size)
            except ValueError:
                raise InvalidRunConfig(f"invalid --bath-size: {args.bath_size!r}") from None
        file_values = load_config(args.config) if args.config else None
        return resolve_run_settings(flags, file_values)

    def print_verify_summary(self, outcome):
        table = Table(show_header=True, header_style="bold blue", box=box.ROUNDED)
        table.add_column("Check", style="cyan")
        table.add_column("Residual", justify="right")
        table.add_column("Tolerance", justify="right")
        table.add_column("Result")
        for report in outcome.reports:
            if report.passed:
                continue
            table.add_row(report.name, f"{report.max_residual:.3e}", f"{report.tolerance:.1e}",
                          "[bold red]FAIL[/bold red]")
        passed = sum(report.passed for report in outcome.reports)
        if table.row_count:
            self.console.print(table)
        self.print_status(
            f"{passed}/{len(outcome.reports)} checks passed; {len(outcome.findings)} findings recorded",
            "green" if outcome.overall_pass else "red",
        )

    def emit(self, text, path=None):
        if text is None:
            return
        if path is None:
            sys.stdout.write(text)
        else:
            atomic_write(text, path)
            self.print_status(f"Saved to {path}", "cyan")

    def execute(self, args, settings):
        analyst = EntropyAnalyst(console=self.console)
        command = args.command

        if command == "verify":
            outcome = analyst.verify(settings["scope"], tamper_mu=args.tamper_mu)
            self.emit(render_json(outcome.to_dict()), settings["out"])
            self.print_verify_summary(outcome)
            return EXIT_OK if outcome.overall_pass else EXIT_VERIFY_FAILED

        if command == "figures":
            if not settings["out"]:
                raise InvalidRunConfig("figures requires --out DIR")
            written = analyst.figures(settings["out"], settings["format"])
            self.print_status(f"{len(written)} figure files written to {settings['out']}")
            return EXIT_OK

        config = RunConfig.from_settings(settings)
        if command == "curve":
            self.emit(analyst.emit_curves(config, analyst.curves(config)))
        elif command == "asymptote":
            self.emit(analyst.write_table(analyst.asymptote_table(config), config, config.params.describe()))
        elif command == "death-time":
            self.emit(analyst.write_table(analyst.death_time_table(config), config, config.params.describe()))
        elif command == "spectrum":
            table = analyst.spectrum_table(config, settings["max_level"])
            self.emit(analyst.write_table(table, config, config.params.describe()))
        return EXIT_OK

    def run(self, argv=None):
        args = self.parse_args(argv)

        if not args.quiet:
            self.print_banner()

        if args.help or (args.command is None and not args.version):
            self.print_help_table()
            return EXIT_OK

        if args.version:
            sys.stdout.write(f"ptentropy {__version__}\n")
            return EXIT_OK

        self.setup_logging(log_file=args.log_file, verbose=args.verbose, quiet=args.quiet)
        if args.quiet:
            self.console.quiet = True

        dependencies = check_dependencies()
        missing = dependencies["missing"]
        self.logger.debug(
            "Dependencies: " + ", ".join(f"{name} {version}" for name, version in dependencies["versions"].items())
        )
        if missing:
            self.console.print(f"Dependency error: {', '.join(missing)}", style="bold red")
            return EXIT_INVALID_INPUT

        try:
            settings = self.resolve_settings(args)
            return self.execute(args, settings)
        except ValueError as ve:
            message = "; ".join(str(ve).splitlines())
            sys.stderr.write(f"error: {type(ve).__name__}: {message}\n")
            return EXIT_INVALID_INPUT


def main(argv=None):
    cli = PTEntropyCLI()
    return cli.run(argv)


if __name__ == "__main__":
    sys.exit(main())
