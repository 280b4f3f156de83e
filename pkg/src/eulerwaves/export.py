"""Plain-text exporters: snapshot CSV, legacy VTK, contour polyline CSV.

Floats are written with 17 significant digits so a re-read reproduces the
IEEE doubles exactly; all writers are pure functions of their inputs, so
identical snapshots produce byte-identical files.
"""

from __future__ import annotations

import numpy as np

_FMT = "%.17g"


def _snapshot_columns(snap):
    d = snap.grid.d
    coord_names = ["x", "y", "z"][:d]
    vel_names = ["u1", "u2", "u3"][:d]
    pts = snap.grid.node_points()
    cols = [pts[:, i] for i in range(d)]
    cols += [snap.u[:, i] for i in range(d)]
    cols += [snap.rho, snap.p, snap.w, snap.S]
    names = coord_names + vel_names + ["rho", "p", "w", "S"]
    return names, cols


def write_snapshot_csv(snap, path) -> None:
    """Header x,y[,z],u1,u2[,u3],rho,p,w,S,valid; one row per grid node."""
    names, cols = _snapshot_columns(snap)
    valid = snap.valid.astype(int)
    with open(path, "w") as fh:
        fh.write(",".join(names + ["valid"]) + "\n")
        for row in range(len(valid)):
            vals = [_FMT % col[row] for col in cols]
            fh.write(",".join(vals + [str(valid[row])]) + "\n")


def read_snapshot_csv(path):
    """Return (column names, data array) from a snapshot CSV."""
    with open(path) as fh:
        names = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return names, data


def write_snapshot_vtk(snap, path, title: str = "field snapshot") -> None:
    """Legacy ASCII STRUCTURED_POINTS file with velocity, rho, p and w."""
    d = snap.grid.d
    dims = list(snap.grid.shape) + [1] * (3 - d)
    origin = list(snap.grid.lo) + [0.0] * (3 - d)
    spacing = list(snap.grid.node_spacing()) + [1.0] * (3 - d)
    n = snap.grid.n_points
    vel = np.zeros((n, 3))
    vel[:, :d] = snap.u
    with open(path, "w") as fh:
        fh.write("# vtk DataFile Version 3.0\n")
        fh.write(title + "\n")
        fh.write("ASCII\n")
        fh.write("DATASET STRUCTURED_POINTS\n")
        fh.write("DIMENSIONS %d %d %d\n" % tuple(dims))
        fh.write(("ORIGIN " + " ".join([_FMT] * 3) + "\n") % tuple(origin))
        fh.write(("SPACING " + " ".join([_FMT] * 3) + "\n") % tuple(spacing))
        fh.write("POINT_DATA %d\n" % n)
        fh.write("VECTORS velocity double\n")
        for row in vel:
            fh.write((" ".join([_FMT] * 3) + "\n") % tuple(row))
        for name, values in (("rho", snap.rho), ("p", snap.p), ("w", snap.w)):
            fh.write("SCALARS %s double 1\n" % name)
            fh.write("LOOKUP_TABLE default\n")
            for v in values:
                fh.write((_FMT + "\n") % v)


def write_contours_csv(blocks, path) -> None:
    """One polyline per block: a '# level=' comment, x,y rows, blank line."""
    with open(path, "w") as fh:
        for level, poly in blocks:
            fh.write(("# level=" + _FMT + "\n") % level)
            for x, y in np.asarray(poly):
                fh.write((_FMT + "," + _FMT + "\n") % (x, y))
            fh.write("\n")


def read_contours_csv(path):
    """Return the list of (level, polyline) pairs from a contour CSV."""
    blocks = []
    level = None
    rows: list = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# level="):
                level = float(line.split("=", 1)[1])
                rows = []
            elif line:
                rows.append([float(v) for v in line.split(",")])
            elif level is not None:
                blocks.append((level, np.asarray(rows)))
                level, rows = None, []
    if level is not None:  # file without trailing newline
        blocks.append((level, np.asarray(rows)))
    return blocks
