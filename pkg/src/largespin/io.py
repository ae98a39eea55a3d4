"""CSV trajectories, key-value summaries, and gnuplot scripts."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .dynamics import Trajectory

FLOAT_FMT = "%.15g"


def write_trajectory_csv(traj: Trajectory, path, extra: dict | None = None) -> Path:
    """Write the trajectory columns (plus optional ``extra`` named series) as CSV."""
    cols = traj.columns()
    if extra:
        cols.update(extra)
    names = list(cols)
    data = np.column_stack([np.asarray(cols[n], dtype=float) for n in names])
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, data, fmt=FLOAT_FMT, delimiter=",", header=",".join(names), comments="")
    return path


def read_trajectory_csv(path, spin: float = 0.5) -> tuple[Trajectory, dict]:
    """Read a trajectory CSV; returns the Trajectory and any extra columns."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    names = data.dtype.names
    core = {n: np.atleast_1d(data[n]) for n in Trajectory.COLUMNS}
    traj = Trajectory(core.pop("t"), **core, spin=spin)
    extra = {n: np.atleast_1d(data[n]) for n in names if n not in Trajectory.COLUMNS}
    return traj, extra


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return FLOAT_FMT % value
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def write_summary(summary: dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{key} = {format_value(value)}" for key, value in summary.items()]
    path.write_text("\n".join(lines) + "\n")
    return path


def read_summary(path) -> dict:
    out = {}
    for line in Path(path).read_text().splitlines():
        if "=" in line:
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def write_plot_script(csv_files: dict, path, title: str = "", normalize: dict | None = None) -> Path:
    """Gnuplot script drawing <J_z> and <J_x> from each CSV into a PNG.

    ``csv_files`` maps a legend label to a CSV path; ``normalize`` optionally
    maps the same labels to a divisor (e.g. J for <J_z>/J).
    """
    path = Path(path)
    normalize = normalize or {}
    png = path.with_suffix(".png").name

    def series(column, ylabel):
        plots = []
        for label, csv in csv_files.items():
            scale = normalize.get(label, 1)
            expr = f"(${column}/{scale:g})" if scale != 1 else f"{column}"
            plots.append(f"'{Path(csv).name}' using 1:{expr} with lines title '{label}'")
        return [f"set ylabel '{ylabel}'", "plot " + ", \\\n     ".join(plots)]

    zcol, xcol = Trajectory.COLUMNS.index("jz") + 1, Trajectory.COLUMNS.index("jx") + 1
    lines = [
        "# gnuplot script; run from the directory holding the CSV files",
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set terminal pngcairo size 900,700",
        f"set output '{png}'",
        "set multiplot layout 2,1" + (f" title '{title}'" if title else ""),
        "set xlabel 't T_c'",
        *series(zcol, "<J_z>" + ("/J" if normalize else "")),
        *series(xcol, "<J_x>" + ("/J" if normalize else "")),
        "unset multiplot",
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path
