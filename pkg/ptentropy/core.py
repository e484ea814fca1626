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
"""Core functionality for ptentropy.

This module ties the closed-form engine, the Fock-space oracle and the
writers together: entropy curves, figure data, asymptote, sudden-death and
spectrum tables, and the verification suite.
"""

import logging
import math
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from rich.console import Console

from .config import PROPAGATION_TOL, resolve_run_settings
from .db.figures import (
    FIGURE_BATH_SIZES,
    FIGURE_SAMPLES,
    FIGURE_T_END,
    FIGURE_T_START,
    FIGURES,
    PRINTED_ASYMPTOTE,
    PRINTED_ASYMPTOTE_TOL,
    figure_kwargs,
)
from .engine import (
    ModelParams,
    RegimeTag,
    asymptote,
    classify_regime,
    energy_spectrum,
    entropy,
    entropy_curve,
    half_life,
    sudden_death_time,
)
from .errors import InvalidRunConfig
from .io.writer import FORMATS, atomic_write, header_line, render_json, render_table, save_table, table_payload
from .oracle import (
    CheckReport,
    build_basis,
    commutator_table_check,
    discrepancy_report,
    dyson_hermiticity,
    dyson_residual,
    frame_consistency_check,
    integrate_alpha_beta,
    metric_positivity,
    propagate_state,
    pt_check,
)

logger = logging.getLogger(__name__)

SCOPES = {
    "quick": {"bath_sizes": (1, 2), "caps": (1,), "t_max": 2.0},
    "full": {"bath_sizes": (1, 2, 3), "caps": (1, 2), "t_max": 10.0},
}
DYSON_TIMES = np.linspace(0.0, 2.0, 50)


@dataclass
class RunConfig:
    """Validated settings of one CLI run."""

    params: ModelParams
    t_start: float = 0.0
    t_end: float = 10.0
    samples: int = 2001
    bath_sizes: List[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    output_format: str = "csv"
    output_path: Optional[str] = None

    def __post_init__(self):
        if not self.t_end > self.t_start:
            raise InvalidRunConfig(f"t_end ({self.t_end}) must exceed t_start ({self.t_start})")
        if isinstance(self.samples, bool) or int(self.samples) != self.samples or self.samples < 2:
            raise InvalidRunConfig(f"samples must be an integer >= 2, got {self.samples}")
        if not self.bath_sizes or any(int(n) != n or n < 1 for n in self.bath_sizes):
            raise InvalidRunConfig(f"bath sizes must be positive integers, got {self.bath_sizes}")
        if self.output_format not in FORMATS:
            raise InvalidRunConfig(
                f"Unsupported output format: {self.output_format}. Supported formats: {', '.join(FORMATS)}"
            )
        self.samples = int(self.samples)
        self.bath_sizes = [int(n) for n in self.bath_sizes]

    @classmethod
    def from_settings(cls, settings: dict) -> "RunConfig":
        """Build from a resolved settings dict (see ``config.resolve_run_settings``)."""
        settings = resolve_run_settings(file_values=settings)
        params = ModelParams(
            nu=settings["nu"],
            g=settings["g"],
            kappa=settings["kappa"],
            n_bath=settings["bath_size"][0] if settings["bath_size"] else 1,
            c1=settings["c1"],
            c2=settings["c2"],
            gamma=settings["gamma"],
        )
        return cls(
            params=params,
            t_start=settings["t_start"],
            t_end=settings["t_end"],
            samples=settings["samples"],
            bath_sizes=list(settings["bath_size"]),
            output_format=settings["format"],
            output_path=settings["out"],
        )

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.samples)

    def params_for(self, n_bath: int) -> ModelParams:
        return self.params.with_bath(n_bath)


@dataclass
class VerifyOutcome:
    """Verification result: asserted reports decide overall_pass."""

    reports: List[CheckReport]
    findings: List[CheckReport]

    @property
    def overall_pass(self) -> bool:
        return all(report.passed for report in self.reports if report.asserted)

    def to_dict(self) -> dict:
        return {
            "overall_pass": self.overall_pass,
            "reports": [report.to_dict() for report in self.reports],
            "findings": [report.to_dict() for report in self.findings],
        }


def suffixed_path(path: str, n_bath: int, fmt: str) -> str:
    """out.csv -> out_N3.csv; a missing extension becomes the format name."""
    root, ext = os.path.splitext(path)
    return f"{root}_N{n_bath}{ext or '.' + fmt}"


def unique_findings(findings: List[CheckReport]) -> List[CheckReport]:
    """Drop repeated findings (same name and notes), keeping the first."""
    seen = set()
    unique = []
    for finding in findings:
        key = (finding.name, finding.notes)
        if key in seen:
            continue
        seen.add(key)
        unique.append(finding)
    return unique


class EntropyAnalyst:
    """Main class for entropy curves and verification."""

    def __init__(self, console=None):
        self.console = console or Console(stderr=True)

    def print_status(self, message, style="green"):
        """Print status messages with Rich formatting."""
        self.console.print(f"[+] {message}", style=f"bold {style}")

    # Curves and tables

    def curves(self, config: RunConfig) -> Dict[int, pd.DataFrame]:
        """Entropy curve for every bath size of the config."""
        tables = {}
        for n_bath in config.bath_sizes:
            params = config.params_for(n_bath)
            tables[n_bath] = entropy_curve(config.times, params)
            logger.debug(f"Curve for N={n_bath}: {len(tables[n_bath])} samples")
        return tables

    def emit_curves(self, config: RunConfig, tables: Dict[int, pd.DataFrame]) -> Optional[str]:
        """Write one file per bath size, or return the rendered text when no path is set.

        Without a path, CSV tables are concatenated (each with its own header
        comment) and JSON becomes one document holding a ``curves`` array.
        """
        if config.output_path is None:
            if config.output_format == "json":
                curves = [
                    {"N": n_bath, **table_payload(table, config.params_for(n_bath).describe())}
                    for n_bath, table in tables.items()
                ]
                return render_json({"producer": header_line()[2:], "curves": curves})
            return "".join(
                render_table(table, config.output_format, config.params_for(n_bath).describe())
                for n_bath, table in tables.items()
            )
        for n_bath, table in tables.items():
            path = suffixed_path(config.output_path, n_bath, config.output_format)
            save_table(table, path, config.output_format, config.params_for(n_bath).describe())
            self.print_status(f"Saved N={n_bath} curve to {path}", "cyan")
        return None

    def figures(self, out_dir: str, fmt: str = "csv") -> List[str]:
        """Write the data of the three published figures into ``out_dir``."""
        if fmt not in FORMATS:
            raise InvalidRunConfig(f"Unsupported output format: {fmt}. Supported formats: {', '.join(FORMATS)}")
        times = np.linspace(FIGURE_T_START, FIGURE_T_END, FIGURE_SAMPLES)
        written = []
        for name in FIGURES:
            for n_bath in FIGURE_BATH_SIZES:
                params = ModelParams(**figure_kwargs(name), n_bath=n_bath)
                path = os.path.join(out_dir, f"figure_{name}_N{n_bath}.{fmt}")
                save_table(entropy_curve(times, params), path, fmt, params.describe())
                written.append(path)
            self.print_status(f"Figure data for the {name} regime written", "cyan")
        return written

    def asymptote_table(self, config: RunConfig) -> pd.DataFrame:
        value, xi = asymptote(config.params)
        return pd.DataFrame({"S_inf": [value], "xi": [xi]})

    def death_time_table(self, config: RunConfig) -> pd.DataFrame:
        """First vanishing time and, away from the unbroken regime, the decay half-life per bath size."""
        rows = []
        for n_bath in config.bath_sizes:
            params = config.params_for(n_bath)
            t_star = sudden_death_time(params)
            decays = classify_regime(params).tag is not RegimeTag.UNBROKEN
            t_half = half_life(params) if decays else None
            rows.append(
                {
                    "N": n_bath,
                    "t_star": "none" if t_star is None else f"{t_star:.12g}",
                    "half_life": "none" if t_half is None else f"{t_half:.12g}",
                }
            )
        return pd.DataFrame(rows, columns=["N", "t_star", "half_life"])

    def spectrum_table(self, config: RunConfig, max_level: int) -> pd.DataFrame:
        if isinstance(max_level, bool) or int(max_level) != max_level or max_level < 0:
            raise InvalidRunConfig(f"max_level must be a non-negative integer, got {max_level}")
        rows = []
        for n_bath in config.bath_sizes:
            params = config.params_for(n_bath)
            regime = classify_regime(params).tag.value
            for m in range(int(max_level) + 1):
                e_plus, e_minus = energy_spectrum(params, m)
                rows.append(
                    {
                        "N": n_bath,
                        "m": m,
                        "E_plus_real": e_plus.real,
                        "E_plus_imag": e_plus.imag,
                        "E_minus_real": e_minus.real,
                        "E_minus_imag": e_minus.imag,
                        "regime": regime,
                        "bounded_below": params.bounded_below,
                    }
                )
        return pd.DataFrame(rows)

    def write_table(self, table: pd.DataFrame, config: RunConfig, context: str = "") -> Optional[str]:
        text = render_table(table, config.output_format, context)
        if config.output_path is None:
            return text
        atomic_write(text, config.output_path)
        self.print_status(f"Saved {len(table)} rows to {config.output_path}", "cyan")
        return None

    # Verification

    def _engine_reports(self) -> List[CheckReport]:
        reports = []
        broken = ModelParams(**figure_kwargs("broken"))
        value, _ = asymptote(broken)
        reports.append(
            CheckReport(
                "asymptote vs printed value",
                abs(value - PRINTED_ASYMPTOTE),
                PRINTED_ASYMPTOTE_TOL,
                f"S_inf = {value:.6f}",
            )
        )
        s_late = entropy(50.0, broken).entropy
        reports.append(CheckReport("broken S(50) near asymptote", abs(s_late - value), 1e-3, f"S(50) = {s_late:.6g}"))

        exceptional = ModelParams(**figure_kwargs("exceptional"))
        s_exc = entropy(100.0, exceptional).entropy
        reports.append(CheckReport("exceptional S(100) decays", s_exc, 1e-3, f"S(100) = {s_exc:.3e}"))

        unbroken = ModelParams(**figure_kwargs("unbroken"))
        worst = 0.0
        previous = math.inf
        decreasing = True
        for n_bath in (1, 2, 3, 4, 5):
            t_star = sudden_death_time(unbroken.with_bath(n_bath))
            expected = math.pi / (4.0 * math.sqrt(n_bath) * math.sqrt(unbroken.delta))
            worst = max(worst, abs(t_star - expected))
            decreasing = decreasing and t_star < previous
            previous = t_star
        reports.append(
            CheckReport(
                "sudden death t*(N) = pi / (4 sqrt(N) sqrt(g^2 - kappa^2))",
                worst if decreasing else math.inf,
                1e-9,
                "t* decreasing in N" if decreasing else "t* not decreasing in N",
            )
        )
        return reports

    def _propagation_reports(self, params: ModelParams, basis, t_max: float) -> List[CheckReport]:
        times = np.linspace(0.0, t_max, 101)
        rotated = propagate_state(times, basis, params, "rotation_Ay")
        closed = entropy_curve(times, params)
        tag = f"N={params.n_bath},{classify_regime(params).tag.value}"
        gap = float(np.max(np.abs(rotated["S"].to_numpy() - closed["S"].to_numpy())))
        evolved = propagate_state(times, basis, params, "h_with_Ax")
        drift = float(np.max(np.abs(evolved["norm"].to_numpy() - 1.0)))
        return [
            CheckReport(f"A_y rotation vs closed-form entropy [{tag}]", gap, PROPAGATION_TOL),
            CheckReport(f"norm under h [{tag}]", drift, PROPAGATION_TOL, f"t in [0, {t_max:g}]"),
        ]

    def verify(self, scope: str = "quick", tamper_mu: Optional[float] = None) -> VerifyOutcome:
        """Run the verification suite.

        Args:
            scope: 'quick' or 'full'
            tamper_mu: Scale applied to mu in the Dyson residual (negative control)

        Returns:
            VerifyOutcome with asserted reports and informational findings
        """
        if scope not in SCOPES:
            raise InvalidRunConfig(f"scope must be one of {', '.join(SCOPES)}, got {scope!r}")
        plan = SCOPES[scope]
        mu_scale = 1.0 if tamper_mu is None else float(tamper_mu)
        reports: List[CheckReport] = []
        findings: List[CheckReport] = []

        def collect(items):
            for item in items:
                (reports if item.asserted else findings).append(item)

        self.print_status(f"Verifying ({scope} scope)...")
        collect(self._engine_reports())

        for n_bath in plan["bath_sizes"]:
            for cap in plan["caps"]:
                basis = build_basis(n_bath, cap)
                collect(commutator_table_check(basis))
                for name in FIGURES:
                    params = ModelParams(**figure_kwargs(name), n_bath=n_bath)
                    collect(pt_check(basis, params))
                    collect([dyson_residual(DYSON_TIMES, basis, params, "true", mu_scale)])
                    collect([dyson_hermiticity(DYSON_TIMES, basis, params)])
                    collect([metric_positivity(DYSON_TIMES, basis, params)])
            self.print_status(f"Matrix checks for N={n_bath} done", "cyan")

            basis = build_basis(n_bath, 1)
            for name in FIGURES:
                params = ModelParams(**figure_kwargs(name), n_bath=n_bath)
                _, ode_report = integrate_alpha_beta(params, plan["t_max"])
                collect([ode_report])
                collect(frame_consistency_check(params, basis, np.linspace(0.0, 2.0, 21)))
                collect(self._propagation_reports(params, basis, plan["t_max"]))

        self.print_status("Collecting discrepancy findings...")
        ledger = [ModelParams(**figure_kwargs(name)) for name in FIGURES]
        findings.extend(discrepancy_report(ledger))

        outcome = VerifyOutcome(reports, unique_findings(findings))
        failed = [report.name for report in reports if not report.passed]
        if failed:
            logger.warning(f"{len(failed)} checks failed: {', '.join(failed)}")
        return outcome
