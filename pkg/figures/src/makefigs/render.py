"""Offline figure regeneration from frontlab CSV artifacts.

Reads the delimited snapshot/spectrum contracts (header line `# t=<time>`,
then a column-name row) and renders deterministic PNGs: shear profiles of
the planar front, (x, t, phi) surface plots, multi-time overlays with the
five-color convention, zoomed singularity details, and spectrum decay
plots.  No in-process coupling to the simulation library: everything comes
in through files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIVE_COLORS = ("blue", "cyan", "magenta", "green", "red")
DPI = 150


class FigureInputError(ValueError):
    """Missing or malformed input artifact."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str  # shear | surface | graphs | detail | spectrum
    inputs: tuple = ()
    output: str = "figure.png"
    alphas: tuple = (1.0, 1.5, 2.0)
    labels: tuple = ()
    colors: tuple = FIVE_COLORS
    xlim: tuple | None = None
    title: str = ""

    KINDS = ("shear", "surface", "graphs", "detail", "spectrum")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise FigureInputError(f"unknown figure kind {self.kind!r}")
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "colors", tuple(self.colors))

    @classmethod
    def from_dict(cls, doc: dict) -> "FigureSpec":
        allowed = {"kind", "inputs", "output", "alphas", "labels", "colors",
                   "xlim", "title"}
        unknown = doc.keys() - allowed
        if unknown:
            raise FigureInputError(f"unknown figure spec fields: {sorted(unknown)}")
        kwargs = dict(doc)
        if "xlim" in kwargs and kwargs["xlim"] is not None:
            kwargs["xlim"] = tuple(kwargs["xlim"])
        return cls(**kwargs)


def read_timed_csv(path: str):
    """Parse `# t=<time>` + column-header CSV into (t, col0, col1, ...)."""
    if not os.path.exists(path):
        raise FigureInputError(f"input does not exist: {path}")
    try:
        with open(path) as fh:
            header = fh.readline().strip()
            t = float(header.split("=", 1)[1])
            fh.readline()
            data = np.loadtxt(fh, delimiter=",")
    except (ValueError, IndexError) as exc:
        raise FigureInputError(f"malformed CSV {path}: {exc}") from exc
    if data.ndim != 2 or data.shape[0] < 2:
        raise FigureInputError(f"malformed CSV {path}: too few rows")
    return (t, *data.T)


def _new_axes(title: str):
    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=DPI)
    if title:
        ax.set_title(title)
    return fig, ax


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=DPI, metadata={"Software": None})
    plt.close(fig)
    return path


def shear_velocity(y: np.ndarray, alpha: float) -> np.ndarray:
    """Planar-front shear profile: |y| at alpha=2, log|y| at alpha=1,
    |y|^(alpha-1) otherwise."""
    ay = np.abs(y)
    if alpha == 2.0:
        return ay
    if alpha == 1.0:
        return np.log(ay)
    return ay ** (alpha - 1.0)


def make_shear(spec: FigureSpec) -> str:
    fig, ax = _new_axes(spec.title or "planar-front shear profiles")
    y = np.linspace(-2.0, 2.0, 2001)
    y = y[np.abs(y) > 1e-3]
    palette = {1.0: "red", 1.5: "green", 2.0: "blue"}
    for i, alpha in enumerate(spec.alphas):
        color = palette.get(alpha, spec.colors[i % len(spec.colors)])
        label = (spec.labels[i] if i < len(spec.labels)
                 else f"alpha = {alpha:g}")
        ax.plot(shear_velocity(y, alpha), y, color=color, label=label)
    ax.set_xlabel("u(y)")
    ax.set_ylabel("y")
    ax.set_xlim(-3.0, 3.0)
    ax.legend(loc="upper left", fontsize=8)
    return _save(fig, spec.output)


def make_surface(spec: FigureSpec) -> str:
    if not spec.inputs:
        raise FigureInputError("surface figure needs at least one snapshot")
    times, fields, x = [], [], None
    for path in spec.inputs:
        t, xs, phi = read_timed_csv(path)
        if x is None:
            x = xs
        elif len(xs) != len(x) or not np.array_equal(xs, x):
            raise FigureInputError(f"snapshot grids differ: {path}")
        times.append(t)
        fields.append(phi)
    order = np.argsort(times)
    times = np.asarray(times)[order]
    fields = np.asarray(fields)[order]
    fig = plt.figure(figsize=(6.4, 4.8), dpi=DPI)
    ax = fig.add_subplot(projection="3d")
    tg, xg = np.meshgrid(times, x, indexing="ij")
    stride = max(1, len(x) // 512)
    ax.plot_surface(xg[:, ::stride], tg[:, ::stride], fields[:, ::stride],
                    cmap="viridis", linewidth=0, antialiased=False)
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.set_zlabel("phi")
    if spec.title:
        ax.set_title(spec.title)
    return _save(fig, spec.output)


def make_graphs(spec: FigureSpec, detail: bool = False) -> str:
    if not spec.inputs:
        raise FigureInputError("overlay figure needs snapshots")
    fig, ax = _new_axes(spec.title)
    rows = sorted((read_timed_csv(p) for p in spec.inputs), key=lambda r: r[0])
    for i, (t, x, phi) in enumerate(rows):
        ax.plot(x, phi, color=spec.colors[i % len(spec.colors)],
                linewidth=0.9, label=f"t = {t:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("phi")
    if spec.xlim:
        ax.set_xlim(*spec.xlim)
        lo, hi = spec.xlim
        sel = (rows[0][1] >= lo) & (rows[0][1] <= hi)
        if np.any(sel):
            vals = np.concatenate([phi[sel] for _, _, phi in rows])
            pad = 0.05 * (vals.max() - vals.min() + 1e-30)
            ax.set_ylim(vals.min() - pad, vals.max() + pad)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, spec.output)


def make_spectrum(spec: FigureSpec) -> str:
    if not spec.inputs:
        raise FigureInputError("spectrum figure needs inputs")
    fig, ax = _new_axes(spec.title or "coefficient decay")
    for i, path in enumerate(sorted(spec.inputs)):
        t, k, re, im = read_timed_csv(path)
        pos = k > 0
        amps = np.hypot(re[pos], im[pos])
        ax.loglog(k[pos], np.maximum(amps, 1e-300),
                  color=spec.colors[i % len(spec.colors)], linewidth=0.8,
                  label=f"t = {t:g}")
    ax.set_xlabel("k")
    ax.set_ylabel("|phi_hat(k)|")
    ax.set_ylim(1e-18, None)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, spec.output)


def make_figure(spec: FigureSpec) -> str:
    """Render one figure; returns the output path."""
    if spec.kind == "shear":
        return make_shear(spec)
    if spec.kind == "surface":
        return make_surface(spec)
    if spec.kind == "graphs":
        return make_graphs(spec)
    if spec.kind == "detail":
        if spec.xlim is None:
            raise FigureInputError("detail figure needs xlim")
        return make_graphs(spec, detail=True)
    return make_spectrum(spec)
