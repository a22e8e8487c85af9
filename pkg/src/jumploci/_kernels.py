"""Hot integer kernels: cup-product matrix assembly and exact rank.

Two interchangeable backends are provided.

* numpy: vectorized fraction-free (Bareiss) elimination that promotes the
  working array to Python integers (``dtype=object``) as soon as int64
  products could overflow, so it is exact for any input.
* numba: multi-modular rank.  The matrix is reduced modulo primes just below
  2**31 and eliminated in int64 (no overflow possible).  ``rank mod p`` never
  exceeds the rational rank, and a nonzero maximal minor is bounded by the
  Hadamard bound ``H``, so it survives modulo at least one prime once the
  product of the primes used exceeds ``H``; the maximum over those primes
  is therefore the exact rank.

The backend is chosen at import time from ``JUMPLOCI_BACKEND`` (``numba`` or
``numpy``); numba is the default whenever it is importable.  Use
:func:`set_backend` to switch at run time.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional accelerator
    numba = None

# |entry| bound below which products of two entries fit in int64 with room for
# the subtraction in a Bareiss update.
_SAFE = (1 << 31) - 1


def _default_backend():
    requested = os.environ.get("JUMPLOCI_BACKEND", "").strip().lower()
    if requested == "numpy" or numba is None:
        return "numpy"
    return "numba"


BACKEND = _default_backend()


def set_backend(name):
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    BACKEND = name


# ---------------------------------------------------------------- numpy path


def rank_numpy(mat):
    """Exact rank of an integer matrix by fraction-free elimination."""
    a = np.array(mat, copy=True)
    if a.ndim != 2 or a.size == 0:
        return 0
    if a.dtype != object:
        a = a.astype(np.int64)
    rows, cols = a.shape
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a.dtype != object and int(np.abs(a[r:, c:]).max()) > _SAFE:
            a = a.astype(object)
        piv = a[r, c]
        if r + 1 < rows and c + 1 < cols:
            a[r + 1:, c + 1:] = (
                piv * a[r + 1:, c + 1:] - np.outer(a[r + 1:, c], a[r, c + 1:])
            ) // prev
        a[r + 1:, c] = 0
        prev = piv
        r += 1
    return r


def cup_matrix_numpy(incidence, row_flat, row_line, a):
    """Integer matrix of beta -> alpha ^ beta in the per-flat basis.

    Row ``r`` belongs to flat ``row_flat[r]`` and non-pivot line
    ``row_line[r]``; its entry in column ``k`` is
    ``S(x) * [k == j] - a_j * [k in x]`` with ``S(x)`` the sum of ``a`` over
    the flat.
    """
    a = np.asarray(a)
    if a.dtype != object:
        a = a.astype(np.int64)
    inc = incidence.astype(a.dtype) if a.dtype != object else incidence.astype(object)
    sums = inc @ a
    m = -a[row_line][:, None] * inc[row_flat]
    m[np.arange(len(row_line)), row_line] += sums[row_flat]
    return m


# ---------------------------------------------------------------- numba path


def _is_prime(n):
    # deterministic Miller-Rabin for n < 3.2e9
    if n % 2 == 0:
        return n == 2
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in (2, 3, 5, 7):
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _top_primes(count, below=1 << 31):
    out = []
    n = below - 1
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return np.array(out, dtype=np.int64)


# each prime exceeds 2**30, so k primes cover a Hadamard bound of 30*k bits
_PRIMES = _top_primes(96)
_PRIME_BITS = 30


if numba is not None:

    @numba.njit(cache=True)
    def _rank_mod_p(a, p):
        """Rank of ``a`` (entries already in [0, p)) over GF(p); ``a`` is overwritten."""
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            # inverse by Fermat
            inv = 1
            base = a[r, c]
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = inv * base % p
                base = base * base % p
                e >>= 1
            for i in range(r + 1, rows):
                if a[i, c] == 0:
                    continue
                f = a[i, c] * inv % p
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r

    @numba.njit(cache=True)
    def _hadamard_bits(a, keep):
        """log2 upper bound on any minor: the ``keep`` largest row bounds
        ``0.5*log2(cols) + bitlength(max |row|)`` summed."""
        rows, cols = a.shape
        half = 0.5 * np.log2(max(cols, 1))
        b = np.zeros(rows)
        for i in range(rows):
            m = 0
            for j in range(cols):
                v = abs(a[i, j])
                if v > m:
                    m = v
            if m > 0:
                bl = 0
                while m > 0:
                    bl += 1
                    m >>= 1
                b[i] = bl + half
        b = np.sort(b)[::-1]
        return b[:keep].sum()

    @numba.njit(cache=True)
    def _rank_multimod(a, primes, cap):
        """Exact rank of the int64 matrix ``a``; -1 if ``primes`` run out."""
        rows, cols = a.shape
        top = min(rows, cols, cap)
        if top <= 0:
            return 0
        need = int(_hadamard_bits(a, top) / _PRIME_BITS) + 1
        if need > primes.shape[0]:
            return -1
        best = 0
        w = np.empty((rows, cols), dtype=np.int64)
        for t in range(need):
            p = primes[t]
            for i in range(rows):
                for j in range(cols):
                    w[i, j] = a[i, j] % p
            r = _rank_mod_p(w, p)
            if r > best:
                best = r
                if best >= top:
                    break
        return best

    @numba.njit(cache=True)
    def _cup_matrix_int64(incidence, row_flat, row_line, a):
        nflats, n = incidence.shape
        sums = np.zeros(nflats, dtype=np.int64)
        for x in range(nflats):
            s = 0
            for k in range(n):
                if incidence[x, k]:
                    s += a[k]
            sums[x] = s
        nrows = row_flat.shape[0]
        m = np.zeros((nrows, n), dtype=np.int64)
        for r in range(nrows):
            x = row_flat[r]
            j = row_line[r]
            for k in range(n):
                if incidence[x, k]:
                    m[r, k] = -a[j]
            m[r, j] += sums[x]
        return m

    @numba.njit(cache=True)
    def _cup_rank_int64(incidence, row_flat, row_line, a, primes):
        # a itself is in the kernel (a ^ a = 0), so the rank is at most n - 1
        n = a.shape[0]
        cap = n
        for k in range(n):
            if a[k] != 0:
                cap = n - 1
                break
        return _rank_multimod(_cup_matrix_int64(incidence, row_flat, row_line, a), primes, cap)


def _rank_big(a):
    """Multi-modular rank for Python-int matrices (reduced in Python)."""
    rows, cols = a.shape
    top = min(rows, cols)
    maxbits = [max((abs(int(v)).bit_length() for v in row), default=0) for row in a]
    half = 0.5 * np.log2(max(cols, 1))
    bits = sum(sorted((b + half for b in maxbits if b), reverse=True)[:top])
    need = int(bits / _PRIME_BITS) + 1
    if need > len(_PRIMES):
        return -1
    best = 0
    for p in _PRIMES[:need]:
        p = int(p)
        w = np.array([[int(v) % p for v in row] for row in a], dtype=np.int64)
        best = max(best, _rank_mod_p(w, p))
        if best >= top:
            break
    return best


def rank_numba(mat):
    a = np.asarray(mat)
    if a.ndim != 2 or a.size == 0:
        return 0
    if a.dtype == object:
        if max(abs(int(v)) for v in a.flat) > (1 << 62):
            r = _rank_big(a)
            return rank_numpy(a) if r < 0 else int(r)
        a = a.astype(np.int64)
    r = _rank_multimod(np.ascontiguousarray(a, dtype=np.int64), _PRIMES, min(a.shape))
    return rank_numpy(mat) if r < 0 else int(r)


def _fits_int64(a, width):
    # sums over a flat of up to `width` entries must stay well inside int64
    return max((abs(int(v)) for v in a), default=0) * (width + 1) <= 1 << 62


def cup_matrix(incidence, row_flat, row_line, a):
    a_obj = [int(v) for v in a]
    if not _fits_int64(a_obj, incidence.shape[1]):
        return cup_matrix_numpy(incidence, row_flat, row_line, np.array(a_obj, dtype=object))
    a64 = np.array(a_obj, dtype=np.int64)
    if BACKEND == "numba":
        return _cup_matrix_int64(incidence, row_flat, row_line, a64)
    return cup_matrix_numpy(incidence, row_flat, row_line, a64)


def cup_rank(incidence, row_flat, row_line, a):
    """Rank of the cup-product matrix for the integer one-form ``a``."""
    if len(row_flat) == 0:
        return 0
    a_obj = [int(v) for v in a]
    if BACKEND == "numba" and _fits_int64(a_obj, incidence.shape[1]):
        r = _cup_rank_int64(incidence, row_flat, row_line, np.array(a_obj, dtype=np.int64), _PRIMES)
        if r >= 0:
            return int(r)
    return rank_numpy(cup_matrix(incidence, row_flat, row_line, a_obj))


def rank(mat):
    if BACKEND == "numba":
        return rank_numba(mat)
    return rank_numpy(mat)


def warmup():
    """Trigger JIT compilation so later timings measure steady state."""
    if numba is None:
        return
    inc = np.array([[1, 1, 1]], dtype=np.int8)
    rf = np.array([0, 0], dtype=np.int64)
    rl = np.array([1, 2], dtype=np.int64)
    _cup_rank_int64(inc, rf, rl, np.array([1, 2, 3], dtype=np.int64), _PRIMES)
    _cup_matrix_int64(inc, rf, rl, np.array([1, 2, 3], dtype=np.int64))
    _rank_multimod(np.eye(2, dtype=np.int64), _PRIMES, 2)
    _rank_mod_p(np.eye(2, dtype=np.int64), 7)
