"""Artifact I/O: CSV contracts, run manifests, JSON schema validation.

All floating-point output uses 17 significant digits so round-trips are
lossless.  Manifests are written atomically (temp file + rename) and always
appear, even when a run aborts.
"""

from __future__ import annotations

import json
import os
import tempfile
from importlib import resources

import numpy as np

__all__ = [
    "ArtifactWriter",
    "build_manifest",
    "fmt",
    "load_schema",
    "validate_config",
    "validate_manifest",
    "write_manifest",
]

TOOL_VERSION = "0.1.0"


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def threads() -> int:
    raw = os.environ.get("FRONTLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def load_schema(name: str) -> dict:
    with resources.files("frontlab.schemas").joinpath(name).open("r") as fh:
        return json.load(fh)


def validate_config(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema("config.schema.json"))


def validate_manifest(doc: dict) -> None:
    import jsonschema

    jsonschema.validate(doc, load_schema("manifest.schema.json"))


def build_manifest(command: str, config: dict, outcomes: dict,
                   seeds=()) -> dict:
    return {
        "tool": "frontlab",
        "version": TOOL_VERSION,
        "schema_version": 1,
        "command": command,
        "config": config,
        "rng_seeds": list(int(s) for s in seeds),
        "thread_count": threads(),
        "outcomes": outcomes,
    }


def write_manifest(path: str, manifest: dict) -> None:
    validate_manifest(manifest)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".manifest.tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_snapshot(path: str, t: float, x: np.ndarray, phi: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write(f"# t={fmt(t)}\n")
        fh.write("x,phi\n")
        for xi, pi in zip(x, phi):
            fh.write(f"{fmt(xi)},{fmt(pi)}\n")


def write_spectrum(path: str, wavenumbers: np.ndarray, coeffs: np.ndarray,
                   t: float) -> None:
    order = np.argsort(wavenumbers)
    with open(path, "w") as fh:
        fh.write(f"# t={fmt(t)}\n")
        fh.write("k,re,im\n")
        for idx in order:
            c = coeffs[idx]
            fh.write(f"{int(wavenumbers[idx])},{fmt(c.real)},{fmt(c.imag)}\n")


def read_snapshot(path: str):
    with open(path) as fh:
        header = fh.readline().strip()
        t = float(header.split("=", 1)[1])
        fh.readline()  # column names
        data = np.loadtxt(fh, delimiter=",")
    return t, data[:, 0], data[:, 1]


class ArtifactWriter:
    """Owns the on-disk layout of one simulation run."""

    def __init__(self, output_dir: str):
        self.dir = output_dir
        os.makedirs(output_dir, exist_ok=True)
        self._diag_path = os.path.join(output_dir, "diagnostics.csv")
        self._diag_header_written = False
        self._snapshot_index = 0

    def snapshot(self, state) -> str:
        path = os.path.join(self.dir, f"snapshot_{self._snapshot_index:06d}.csv")
        write_snapshot(path, state.time, state.grid.points, state.values())
        spath = os.path.join(self.dir, f"spectrum_{self._snapshot_index:06d}.csv")
        write_spectrum(spath, state.grid.wavenumbers, state.coeffs, state.time)
        self._snapshot_index += 1
        return path

    def spectrum(self, state) -> None:
        # written together with the snapshot; kept for call-site symmetry
        return None

    def diagnostics_row(self, rec) -> None:
        if not self._diag_header_written:
            s_cols = "".join(f",Hs_{s:g}" for s in sorted(rec.sobolev_norms))
            with open(self._diag_path, "w") as fh:
                fh.write(f"t,H,P,strip_width,max_slope{s_cols}\n")
            self._diag_header_written = True
        cols = [fmt(rec.time), fmt(rec.hamiltonian), fmt(rec.momentum),
                fmt(rec.strip_width), fmt(rec.max_slope)]
        cols += [fmt(rec.sobolev_norms[s]) for s in sorted(rec.sobolev_norms)]
        with open(self._diag_path, "a") as fh:
            fh.write(",".join(cols) + "\n")

    def manifest(self, manifest: dict) -> str:
        path = os.path.join(self.dir, "manifest.json")
        write_manifest(path, manifest)
        return path
