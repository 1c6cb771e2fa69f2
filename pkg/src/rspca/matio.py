"""Matrix file loading/saving and deterministic JSON reports.

Matrix Market (coordinate and array, general and symmetric; symmetric files
are mirrored to full storage) and headerless comma-separated values are the
two accepted matrix formats. JSON artifacts are written with keys in the
order the producing code supplies, two-space indentation, and a trailing
newline, so identical configurations yield byte-identical files.
"""

import json
import os
import warnings

import numpy as np
import scipy.io
import scipy.sparse

__all__ = ["infer_format", "load_matrix", "save_matrix", "write_json"]

_FORMATS = ("matrix-market", "csv")


def infer_format(path):
    ext = os.path.splitext(str(path))[1].lower()
    if ext in (".mtx", ".mm"):
        return "matrix-market"
    if ext == ".csv":
        return "csv"
    raise ValueError("cannot infer matrix format from %r; pass format=" % (path,))


def load_matrix(path, format=None):
    """Read a dense matrix from a Matrix Market or CSV file.

    Parameters
    ----------
    path : str
    format : {"matrix-market", "csv"}, optional
        Inferred from the extension (.mtx/.mm or .csv) when omitted.

    Returns
    -------
    ndarray, shape (m, n)
    """
    fmt = format or infer_format(path)
    if fmt not in _FORMATS:
        raise ValueError("unknown format %r" % (fmt,))
    if fmt == "matrix-market":
        try:
            M = scipy.io.mmread(path)
        except Exception as err:
            raise ValueError("%s: not a readable Matrix Market file (%s)"
                             % (path, err)) from err
        X = M.toarray() if scipy.sparse.issparse(M) else np.asarray(M)
    else:
        try:
            with warnings.catch_warnings():
                # an empty file becomes the nonempty-matrix ValueError below;
                # the extra no-data warning is just noise
                warnings.simplefilter("ignore", UserWarning)
                X = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
        except Exception as err:
            raise ValueError("%s: not a readable CSV matrix (%s)"
                             % (path, err)) from err
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.size == 0:
        raise ValueError("%s: expected a nonempty 2-d matrix" % (path,))
    if not np.all(np.isfinite(X)):
        raise ValueError("%s: matrix has non-finite entries" % (path,))
    return X


def save_matrix(path, X, format=None):
    """Write a dense matrix as Matrix Market array format or CSV."""
    fmt = format or infer_format(path)
    X = np.asarray(X, dtype=np.float64)
    if fmt == "matrix-market":
        scipy.io.mmwrite(path, X)
    elif fmt == "csv":
        np.savetxt(path, X, delimiter=",", fmt="%.17g")
    else:
        raise ValueError("unknown format %r" % (fmt,))


def write_json(path, obj):
    """Serialize a report dict deterministically (insertion-ordered keys)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, ensure_ascii=False, default=_coerce)
        fh.write("\n")


def _coerce(value):
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError("not JSON-serializable: %r" % (type(value),))
