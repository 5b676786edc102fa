"""Pure-Python fraction-free (Bareiss) rank kernels.

Both kernels take rows of Python ints and never produce fractions: after
each pivot step every entry is a minor of the input, so the division by the
previous pivot is exact.  The Gaussian variant runs the same recurrence in
Z[i] with rows split into real and imaginary parts.
"""


def bareiss_rank_int(rows):
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, nrows):
            if m[k][c]:
                piv = k
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        p = prow[c]
        for k in range(r + 1, nrows):
            row = m[k]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def bareiss_rank_gauss(re_rows, im_rows):
    nrows = len(re_rows)
    if nrows == 0:
        return 0
    ncols = len(re_rows[0])
    mr = [list(r) for r in re_rows]
    mi = [list(r) for r in im_rows]
    pr, pi = 1, 0
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, nrows):
            if mr[k][c] or mi[k][c]:
                piv = k
                break
        if piv is None:
            continue
        if piv != r:
            mr[r], mr[piv] = mr[piv], mr[r]
            mi[r], mi[piv] = mi[piv], mi[r]
        br, bi = mr[r], mi[r]
        qr, qi = br[c], bi[c]
        norm = pr * pr + pi * pi
        for k in range(r + 1, nrows):
            rr, ri = mr[k], mi[k]
            ar, ai = rr[c], ri[c]
            for j in range(c + 1, ncols):
                xr, xi = rr[j], ri[j]
                # (q*x - a*b) / prev in Z[i]
                nr = qr * xr - qi * xi - (ar * br[j] - ai * bi[j])
                ni = qr * xi + qi * xr - (ar * bi[j] + ai * br[j])
                rr[j] = (nr * pr + ni * pi) // norm
                ri[j] = (ni * pr - nr * pi) // norm
            rr[c] = 0
            ri[c] = 0
        pr, pi = qr, qi
        r += 1
        if r == nrows:
            break
    return r
