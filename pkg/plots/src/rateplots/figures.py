"""Figure definitions and rendering.

Each figure id maps the result-table columns onto one of the recurring
layouts: rate-vs-distance families with a dashed no-memory baseline,
loss-vs-distance or loss-vs-orbit-phase bundles, and the background-light
chart.  Rendering is pure file-in/file-out and never mutates its inputs;
outputs are byte-stable for fixed inputs and library versions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

BASELINE_SCENARIO = "one_sat_baseline"


@dataclass(frozen=True)
class FigureDef:
    x: str
    y: str
    series: str
    x_label: str
    y_label: str
    log_y: bool = False
    scenario_panels: bool = False  # one panel per non-baseline scenario
    include_baseline: bool = False  # dashed no-memory reference curve
    extra_y: str | None = None      # second, dashed curve per series
    excess_panel: bool = False      # add a panel of y minus the lowest series


FIGURES: dict[str, FigureDef] = {
    # total loss of the A..S_C source path for satellite placements
    "fig1b": FigureDef(
        x="ground_distance_km", y="loss_db_total", series="sa_fraction",
        x_label="ground distance [km]", y_label="loss A..S_C [dB]",
    ),
    # key rate against distance for cutoff choices, with baseline
    "fig2b": FigureDef(
        x="ground_distance_km", y="key_rate_hz", series="cutoff_s",
        x_label="ground distance [km]", y_label="key rate [bits/s]",
        log_y=True, include_baseline=True,
    ),
    # key rate against distance for satellite placements, per scenario
    "fig3": FigureDef(
        x="ground_distance_km", y="key_rate_hz", series="sa_fraction",
        x_label="ground distance [km]", y_label="key rate [bits/s]",
        log_y=True, include_baseline=True, scenario_panels=True,
    ),
    # loss along the orbit: solid full path, dashed ground arm
    "fig4": FigureDef(
        x="orbit_phase_s", y="loss_db_total", series="sa_fraction",
        x_label="orbit phase [s]", y_label="loss [dB]",
        extra_y="loss_db_ground_arm",
    ),
    # static key rate along the orbit
    "fig5": FigureDef(
        x="orbit_phase_s", y="key_rate_hz", series="sa_fraction",
        x_label="orbit phase [s]", y_label="key rate [bits/s]", log_y=True,
    ),
    # divergence-angle variations, per scenario
    "fig6": FigureDef(
        x="ground_distance_km", y="key_rate_hz",
        series="divergence_half_angle_rad",
        x_label="ground distance [km]", y_label="key rate [bits/s]",
        log_y=True, include_baseline=True, scenario_panels=True,
    ),
    # single-satellite variations (heights by default)
    "fig7": FigureDef(
        x="ground_distance_km", y="key_rate_hz", series="orbital_height_km",
        x_label="ground distance [km]", y_label="key rate [bits/s]",
        log_y=True, include_baseline=True,
    ),
    # pointing-error loss and the excess over the best pointing
    "fig8": FigureDef(
        x="ground_distance_km", y="loss_db_memory_arm",
        series="pointing_error_rad",
        x_label="ground distance [km]", y_label="inter-satellite loss [dB]",
        excess_panel=True,
    ),
    # background photons per window against the telescope aperture
    "fig9": FigureDef(
        x="receiver_radius_m", y="background_click_prob",
        series="weather_factor",
        x_label="receiver radius [m]", y_label="background clicks per window",
        log_y=True,
    ),
}
# bright-night variants share the layouts of their dark-sky counterparts
FIGURES["fig10"] = FIGURES["fig7"]
FIGURES["fig11"] = FIGURES["fig3"]


@dataclass(frozen=True)
class FigureSpec:
    """A render request: figure id, input tables, output image."""

    figure_id: str
    inputs: tuple[str, ...]
    output: str
    series: str | None = None   # override the default grouping column
    log_y: bool | None = None
    title: str | None = None

    def resolve(self) -> FigureDef:
        if self.figure_id not in FIGURES:
            raise ValueError(
                f"unknown figure id {self.figure_id!r};"
                f" expected one of {sorted(FIGURES)}"
            )
        definition = FIGURES[self.figure_id]
        if self.series is not None:
            definition = replace(definition, series=self.series)
        if self.log_y is not None:
            definition = replace(definition, log_y=self.log_y)
        return definition


def load_table(inputs: Sequence[str]) -> pd.DataFrame:
    frames = [pd.read_csv(path) for path in inputs]
    return pd.concat(frames, ignore_index=True)


def _require_columns(frame: pd.DataFrame, columns: Sequence[str]) -> None:
    missing = [column for column in columns if column not in frame.columns]
    if missing:
        raise ValueError(f"input table is missing column(s): {', '.join(missing)}")


def _series_label(column: str, value) -> str:
    if pd.isna(value):
        return "no cutoff" if column == "cutoff_s" else f"{column} n/a"
    if column == "sa_fraction":
        return f"S_A @ {value:.0%}"
    if column == "cutoff_s":
        return f"t_cut = {value * 1e3:g} ms"
    if column in ("divergence_half_angle_rad", "pointing_error_rad"):
        return f"{column.split('_')[0]} angle = {value * 1e6:g} urad"
    if column == "dephasing_time_s":
        return f"T_dp = {value * 1e3:g} ms"
    if column == "orbital_height_km":
        return f"h = {value:g} km"
    if column == "weather_factor":
        return f"k = {value:g}"
    return f"{column} = {value:g}"


def _ordered_series(frame: pd.DataFrame, column: str) -> list:
    values = frame[column].drop_duplicates().sort_values(na_position="last")
    return list(values)


def _plot_panel(axis, frame: pd.DataFrame, definition: FigureDef) -> int:
    drawn = 0
    for value in _ordered_series(frame, definition.series):
        if pd.isna(value):
            subset = frame[frame[definition.series].isna()]
        else:
            subset = frame[frame[definition.series] == value]
        subset = subset.sort_values(definition.x)
        y = subset[definition.y].astype(float)
        if definition.log_y:
            y = y.where(y > 0.0)
        if y.notna().sum() == 0:
            continue
        axis.plot(
            subset[definition.x], y,
            marker="o", markersize=3,
            label=_series_label(definition.series, value),
        )
        if definition.extra_y is not None:
            axis.plot(
                subset[definition.x],
                subset[definition.extra_y].astype(float),
                linestyle="--", color=axis.lines[-1].get_color(), alpha=0.7,
            )
        drawn += 1
    return drawn


def _plot_baseline(axis, frame: pd.DataFrame, definition: FigureDef) -> None:
    baseline = frame[frame["scenario"] == BASELINE_SCENARIO]
    if baseline.empty:
        return
    baseline = baseline.sort_values(definition.x)
    y = baseline[definition.y].astype(float)
    if definition.log_y:
        y = y.where(y > 0.0)
    axis.plot(
        baseline[definition.x], y,
        linestyle="--", color="black", label="no-memory baseline",
    )


def build_figure(spec: FigureSpec, frame: pd.DataFrame):
    """Assemble the matplotlib figure for a spec; raises on schema drift."""
    definition = spec.resolve()
    required = ["scenario", definition.x, definition.y, definition.series]
    if definition.extra_y is not None:
        required.append(definition.extra_y)
    _require_columns(frame, required)
    frame = frame.copy()

    ok_rows = frame[frame["status"] == "ok"] if "status" in frame.columns else frame
    baseline_rows = ok_rows[ok_rows["scenario"] == BASELINE_SCENARIO]
    data = ok_rows[ok_rows["scenario"] != BASELINE_SCENARIO]
    data = data.dropna(subset=[definition.x, definition.y])

    if definition.scenario_panels:
        scenarios = sorted(data["scenario"].unique())
        if not scenarios:
            scenarios = ["(empty)"]
        panels = len(scenarios)
    else:
        scenarios, panels = [None], 1
    if definition.excess_panel:
        panels += 1

    figure, axes = plt.subplots(
        1, panels, figsize=(5.2 * panels, 3.9), squeeze=False
    )
    axes = axes[0]

    for index, scenario in enumerate(scenarios):
        axis = axes[index]
        subset = data if scenario is None else data[data["scenario"] == scenario]
        _plot_panel(axis, subset, definition)
        if definition.include_baseline and not baseline_rows.empty:
            _plot_baseline(axis, baseline_rows, definition)
        if definition.log_y:
            axis.set_yscale("log")
        axis.set_xlabel(definition.x_label)
        axis.set_ylabel(definition.y_label)
        axis.grid(alpha=0.3)
        if axis.lines:
            axis.legend(fontsize=8)
        if scenario is not None:
            axis.set_title(scenario)

    if definition.excess_panel:
        axis = axes[-1]
        values = [v for v in _ordered_series(data, definition.series) if not pd.isna(v)]
        if values:
            reference = data[data[definition.series] == values[0]]
            reference = reference.sort_values(definition.x)
            for value in values[1:]:
                subset = data[data[definition.series] == value].sort_values(
                    definition.x
                )
                merged = pd.merge(
                    subset[[definition.x, definition.y]],
                    reference[[definition.x, definition.y]],
                    on=definition.x, suffixes=("", "_ref"),
                )
                axis.plot(
                    merged[definition.x],
                    merged[definition.y] - merged[f"{definition.y}_ref"],
                    marker="o", markersize=3,
                    label=_series_label(definition.series, value),
                )
            axis.set_xlabel(definition.x_label)
            axis.set_ylabel(
                f"excess over {_series_label(definition.series, values[0])} [dB]"
            )
            axis.grid(alpha=0.3)
            if axis.lines:
                axis.legend(fontsize=8)

    if spec.title:
        figure.suptitle(spec.title)
    figure.tight_layout()
    return figure


def render(spec: FigureSpec) -> Path:
    """Render a figure spec to its output path and return the path."""
    frame = load_table(spec.inputs)
    figure = build_figure(spec, frame)
    output = Path(spec.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    figure.savefig(output, dpi=150)
    plt.close(figure)
    return output
