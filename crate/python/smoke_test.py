"""Build the extension module with cargo and exercise it from Python.

Usage: python3 python/smoke_test.py
"""

import importlib
import pathlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module(dest):
    subprocess.run(
        ["cargo", "build", "--release", "-p", "phlandmarks-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libphlandmarks_py.so"
    if not lib.exists():
        lib = lib.with_suffix(".dylib")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(lib, dest / ("phlandmarks_py" + suffix))


def main():
    try:
        pl = importlib.import_module("phlandmarks_py")
    except ImportError:
        tmp = pathlib.Path(tempfile.mkdtemp())
        build_module(tmp)
        sys.path.insert(0, str(tmp))
        pl = importlib.import_module("phlandmarks_py")

    points, labels = pl.generate("sphere-cube", 600, 0.6, 7)
    assert len(points) == 600 and all(len(p) == 3 for p in points)
    assert set(labels) <= {"signal", "noise"}

    square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    bars = pl.vr_barcode(square, 2.0, [0, 1])
    assert (1, 1.0, 2 ** 0.5) in bars
    assert sum(1 for d, _, death in bars if d == 0 and death == float("inf")) == 1

    center = [[0.5, 0.5]] + square
    score = pl.ph_outlierness(center, 0, 1.0, "dim1")
    assert abs(score - (2 ** 0.5 - 1)) < 1e-12

    scores = pl.ph_scores(points, 0.2)
    assert all(s is None or 0.0 <= s <= 0.4 for s in scores)

    m = 60
    fractions = {}
    for method in ["random", "maxmin", "dense-core", "ph", "kmm"]:
        sel = pl.select_landmarks(points, m, method=method, seed=3, include_outliers=True)
        assert len(sel) == m and len(set(sel.landmarks)) == m, method
        fractions[method] = pl.signal_fraction(sel.landmarks, labels)
    centers_only = pl.select_landmarks(points, m, method="kmm", seed=3, p_signal=0.6)
    assert len(centers_only) == round(0.6 * m)
    again = pl.select_landmarks(points, m, method="ph", seed=3)
    assert again.landmarks == pl.select_landmarks(points, m, method="ph", seed=3).landmarks

    try:
        pl.select_landmarks(points, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("m = 0 should be rejected")

    for method, frac in fractions.items():
        print(f"{method:>10}: signal fraction {frac:.3f}")
    print("smoke test passed")


if __name__ == "__main__":
    main()
