"""Render figures from a completed run's CSV files and manifest.

The renderer is a pure consumer of the emitted files: it reads
``manifest.json`` for the file index, unit constants and packet support
bounds, reads the density CSVs, and recomputes nothing physical.
Light-cone markers are drawn at bound -+ c*t using only manifest data.

Command line: ``qft1d-fig --manifest <path> --preset paper-figN --out <dir>``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import ConfigurationError

STYLES = {
    "rho_pa": {"color": "tab:blue", "ls": ":", "label": "particle"},
    "rho_an": {"color": "tab:green", "ls": "-", "label": "anti-particle"},
    "rho_blind": {"color": "tab:red", "ls": "-", "label": "charge-blind"},
    "rho_blind_free": {"color": "tab:red", "ls": "-", "label": "packet (charge-blind)"},
    "rho_pa_wp": {"color": "tab:blue", "ls": ":", "label": "packet particle"},
    "rho_an_wp": {"color": "tab:green", "ls": "-", "label": "packet anti-particle"},
    "rho_ch": {"color": "tab:purple", "ls": "-", "label": "charge"},
    "first_quantized": {"color": "k", "ls": "--", "label": "first quantized"},
}


@dataclass
class Panel:
    time: float
    tags: list
    zoom: tuple | None = None  # (x_lo, x_hi, y_max)
    light_cone: bool = True
    title: str = ""


@dataclass
class FigureSpec:
    manifest_path: Path
    panels: list = field(default_factory=list)
    stem: str = "figure"


def _load_manifest(path: Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read manifest {path}: {exc}") from exc


def _read_csv(path: Path):
    xs, vs = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["x", "value"]:
            raise ConfigurationError(f"{path} is not a density CSV")
        for row in reader:
            xs.append(float(row[0]))
            vs.append(float(row[1]))
    return np.asarray(xs), np.asarray(vs)


def _file_index(manifest: dict) -> dict:
    return {(f["tag"], f["t"]): f["path"] for f in manifest["files"]}


def cone_positions(manifest: dict, t: float) -> list:
    """Light-cone marker positions bound -+ c*t from manifest data."""
    bounds = manifest.get("support_bounds")
    if bounds is None:
        return []
    c = manifest["units"]["c"]
    return [bounds[0] - c * t, bounds[1] + c * t]


def render(spec: FigureSpec, out_dir) -> list:
    """Render every panel to a PNG; returns per-panel metadata.

    Missing files and invalid zoom windows are collected and reported
    together; nothing is written unless every panel is renderable.
    """
    manifest = _load_manifest(spec.manifest_path)
    base = Path(spec.manifest_path).parent
    index = _file_index(manifest)
    out = Path(out_dir)

    # validate everything first: no partial silent output
    errors = []
    panel_data = []
    for k, panel in enumerate(spec.panels):
        curves = {}
        for tag in panel.tags:
            key = (tag, panel.time)
            if key not in index:
                errors.append(f"panel {k}: no emitted file for tag {tag!r} at t={panel.time:g}")
                continue
            path = base / index[key]
            if not path.exists():
                errors.append(f"panel {k}: file {path} listed in manifest is missing")
                continue
            curves[tag] = _read_csv(path)
        if curves and panel.zoom is not None:
            x_lo, x_hi = panel.zoom[0], panel.zoom[1]
            xs = next(iter(curves.values()))[0]
            if x_lo >= x_hi or x_lo < xs[0] or x_hi > xs[-1]:
                errors.append(f"panel {k}: zoom window [{x_lo:g}, {x_hi:g}] outside data range")
        panel_data.append(curves)
    if errors:
        raise ConfigurationError("cannot render:\n  " + "\n  ".join(errors))

    out.mkdir(parents=True, exist_ok=True)
    potential_curve = None
    if manifest.get("potential_file"):
        pot_path = base / manifest["potential_file"]["path"]
        if pot_path.exists():
            potential_curve = _read_csv(pot_path)

    rendered = []
    for k, (panel, curves) in enumerate(zip(spec.panels, panel_data)):
        fig, ax = plt.subplots(figsize=(7.0, 4.2))
        peak = 0.0
        for tag in panel.tags:
            x, v = curves[tag]
            style = STYLES.get(tag, {"color": "gray", "ls": "-", "label": tag})
            ax.plot(x, v, color=style["color"], ls=style["ls"],
                    lw=1.4, label=style["label"])
            peak = max(peak, np.max(np.abs(v)))
        if potential_curve is not None and peak > 0:
            px, pv = potential_curve
            pmax = np.max(np.abs(pv))
            if pmax > 0:
                ax.plot(px, pv / pmax * 0.8 * peak, color="lightblue",
                        lw=1.0, label="potential (scaled)")
        cones = cone_positions(manifest, panel.time) if panel.light_cone else []
        for xc in cones:
            ax.axvline(xc, color="k", lw=1.0)
        if panel.zoom is not None:
            ax.set_xlim(panel.zoom[0], panel.zoom[1])
            if len(panel.zoom) > 2 and panel.zoom[2] is not None:
                ax.set_ylim(-0.05 * panel.zoom[2], panel.zoom[2])
        ax.set_xlabel("x")
        ax.set_ylabel("density")
        ax.set_title(panel.title or f"t = {panel.time:g}")
        ax.legend(loc="upper right", fontsize=8)
        fig.tight_layout()
        png = out / f"{spec.stem}_panel{k}.png"
        fig.savefig(png, dpi=150)
        plt.close(fig)
        rendered.append({"path": str(png), "time": panel.time,
                         "tags": list(panel.tags), "cone_positions": cones})
    return rendered


def preset_figure_spec(manifest_path, preset: str) -> FigureSpec:
    """Panel layout for each bundled scenario preset."""
    manifest = _load_manifest(Path(manifest_path))
    times = manifest["run"]["times"]
    tags = [t for t in manifest["run"]["densities"] if t in STYLES]

    def zoom_window(t):
        # window centred on the left light-cone edge, clamped to the grid
        bounds = manifest.get("support_bounds")
        if bounds is None:
            return None
        c = manifest["units"]["c"]
        half = 0.75 * (bounds[1] - bounds[0])
        edge = bounds[0] - c * t
        x_min = -0.5 * manifest["grid"]["box_length"]
        x_max = -x_min - manifest["grid"]["dx"]
        return (max(edge - half, x_min), min(edge + half, x_max), None)

    panels = []
    if preset in ("paper-fig1", "paper-fig2"):
        full_tags = [t for t in ("rho_pa", "rho_an", "rho_blind") if t in tags]
        show_times = times if preset == "paper-fig1" else times[-1:]
        for t in show_times:
            panels.append(Panel(time=t, tags=full_tags, title=f"densities, t = {t:g}"))
        for t in show_times:
            # zoomed tail panel: linear scale, y-limit well below the peak
            panels.append(Panel(time=t, tags=full_tags, zoom=zoom_window(t),
                                title=f"tail zoom, t = {t:g}"))
    elif preset == "paper-fig3":
        for t in times:
            panels.append(Panel(time=t, tags=["rho_pa", "rho_an", "rho_blind"],
                                light_cone=False,
                                title=f"vacuum pair creation, t = {t:g}"))
    elif preset == "paper-fig4":
        t = times[-1]
        wp_tags = [t_ for t_ in ("rho_pa_wp", "rho_an_wp", "rho_blind_free") if t_ in tags]
        panels.append(Panel(time=t, tags=wp_tags,
                            title=f"packet densities, t = {t:g}"))
        panels.append(Panel(time=t, tags=wp_tags, zoom=zoom_window(t),
                            title=f"light-cone zoom, t = {t:g}"))
    else:
        raise ConfigurationError(f"unknown figure preset {preset!r}")
    return FigureSpec(manifest_path=Path(manifest_path), panels=panels, stem=preset)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qft1d-fig",
        description="render figures from a completed qft1d run",
    )
    parser.add_argument("--manifest", required=True, help="path to manifest.json")
    parser.add_argument("--preset", required=True,
                        choices=["paper-fig1", "paper-fig2", "paper-fig3", "paper-fig4"])
    parser.add_argument("--out", default=".", help="output directory for PNG files")
    args = parser.parse_args(argv)
    try:
        spec = preset_figure_spec(args.manifest, args.preset)
        rendered = render(spec, args.out)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for item in rendered:
        print(f"wrote {item['path']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
