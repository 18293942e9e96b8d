"""Pure numpy implementation of the kernels in ``_kernels.pyx``."""

import numpy as np


def _excluded_products(X):
    # X has shape (m, k); entry (j, t) becomes the product of row j without column t
    m, k = X.shape
    pre = np.ones((m, k + 1))
    np.cumprod(X, axis=1, out=pre[:, 1:])
    suf = np.ones((m, k + 1))
    np.cumprod(X[:, ::-1], axis=1, out=suf[:, 1:])
    return pre[:, :k] * suf[:, k - 1 :: -1]


def apply_tensor(edges, deg, diag, x, out):
    n = x.shape[0]
    k = edges.shape[1]
    out[:] = diag * deg * x ** (k - 1)
    if edges.shape[0]:
        prods = _excluded_products(x[edges])
        out += np.bincount(edges.ravel(), weights=prods.ravel(), minlength=n)


def power_iterate(edges, deg, diag, shift, tol, max_iter, x0):
    k = edges.shape[1]
    x = np.array(x0, dtype=np.float64, copy=True)
    y = np.empty_like(x)
    weight = diag * deg + shift
    flat = edges.ravel()
    n = x.shape[0]
    lo = hi = 0.0
    it = 0
    while it < max_iter:
        it += 1
        xk1 = x ** (k - 1)
        y[:] = weight * xk1
        if edges.shape[0]:
            y += np.bincount(flat, weights=_excluded_products(x[edges]).ravel(), minlength=n)
        ratio = y / xk1
        lo, hi = float(ratio.min()), float(ratio.max())
        if hi - lo <= tol:
            return x, lo - shift, hi - shift, it, True
        x = y ** (1.0 / (k - 1))
        x /= np.sum(x**k) ** (1.0 / k)
    return x, lo - shift, hi - shift, it, False
