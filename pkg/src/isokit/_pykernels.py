"""Pure-Python refinement kernels.

These mirror ``_ckernels`` line for line and are used when the compiled
extension is unavailable or ``ISOKIT_PURE=1`` is set.  Both kernels take
int64 numpy arrays and return an int64 numpy array of canonical colors.
"""

from collections import deque

import numpy as np

BACKEND = "python"


def cr_round(indptr, indices, arc_out, arc_in, colors, n_arc):
    """One Color Refinement round with canonical naming.

    The key of ``v`` is ``(colors[v], sorted codes)`` where each neighbor
    ``w`` contributes the code of ``(colors[w], arc_out, arc_in)``.  New ids
    are the ranks of the distinct keys in lexicographic order.
    Returns ``(new_colors, number_of_colors)``.
    """
    ptr = indptr.tolist()
    ind = indices.tolist()
    out = arc_out.tolist()
    inn = arc_in.tolist()
    col = colors.tolist()
    a = int(n_arc)
    n = len(col)
    keys = []
    for v in range(n):
        lo, hi = ptr[v], ptr[v + 1]
        sig = sorted((col[ind[e]] * a + out[e]) * a + inn[e] for e in range(lo, hi))
        keys.append((col[v], sig))
    order = sorted(range(n), key=keys.__getitem__)
    new = [0] * n
    c = -1
    prev = None
    for v in order:
        if keys[v] != prev:
            c += 1
            prev = keys[v]
        new[v] = c
    return np.asarray(new, dtype=np.int64), c + 1


def equitable(indptr, indices, label, n_labels, colors):
    """Coarsest equitable refinement of ``colors`` (Hopcroft-style worklist).

    ``label[e]`` is the label of arc ``e`` as seen from its head ``indices[e]``;
    a vertex is split by the number of its neighbors in the splitter for each
    label separately.  Cells are kept as contiguous ranges of an ordered
    array; a cell's name is its start position, which depends only on
    isomorphism-invariant data, so the returned colors are canonical.
    """
    ptr = indptr.tolist()
    ind = indices.tolist()
    lab_of = label.tolist()
    col = colors.tolist()
    n = len(col)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    lab = sorted(range(n), key=lambda v: (col[v], v))
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    cell = [0] * n
    end = [0] * (n + 1)
    inq = [False] * (n + 1)
    queue = deque()
    start = 0
    for i in range(1, n + 1):
        if i == n or col[lab[i]] != col[lab[start]]:
            end[start] = i
            for j in range(start, i):
                cell[lab[j]] = start
            queue.append(start)
            inq[start] = True
            start = i
    cnt = [0] * n
    mark = [0] * (n + 1)

    while queue:
        s = queue.popleft()
        inq[s] = False
        members = lab[s:end[s]]
        if n_labels == 1:
            groups = [[ind[e] for w in members for e in range(ptr[w], ptr[w + 1])]]
        else:
            buckets = {}
            for w in members:
                for e in range(ptr[w], ptr[w + 1]):
                    buckets.setdefault(lab_of[e], []).append(ind[e])
            groups = [buckets[k] for k in sorted(buckets)]
        for targets in groups:
            touched = []
            touched_cells = []
            for x in targets:
                if cnt[x] == 0:
                    touched.append(x)
                    c = cell[x]
                    if mark[c] == 0:
                        mark[c] = end[c]
                        touched_cells.append(c)
                    # move x into the touched tail of its cell
                    m = mark[c] - 1
                    y = lab[m]
                    p = pos[x]
                    lab[p], lab[m] = y, x
                    pos[y], pos[x] = p, m
                    mark[c] = m
                cnt[x] += 1
            touched_cells.sort()
            for c in touched_cells:
                e_ = end[c]
                m = mark[c]
                mark[c] = 0
                seg = sorted(lab[m:e_], key=cnt.__getitem__)
                lab[m:e_] = seg
                for i in range(m, e_):
                    pos[lab[i]] = i
                bounds = [c] if m > c else []
                prev = -1
                for i in range(m, e_):
                    k = cnt[lab[i]]
                    if k != prev:
                        bounds.append(i)
                        prev = k
                if len(bounds) == 1:
                    continue
                bounds.append(e_)
                frags = [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]
                for a, b in frags:
                    end[a] = b
                    if a != c:
                        for i in range(a, b):
                            cell[lab[i]] = a
                if inq[c]:
                    skip = c
                else:
                    skip = max(frags, key=lambda f: (f[1] - f[0], -f[0]))[0]
                for a, _b in frags:
                    if a != skip and not inq[a]:
                        queue.append(a)
                        inq[a] = True
            for x in touched:
                cnt[x] = 0

    is_start = [0] * n
    for v in range(n):
        is_start[cell[v]] = 1
    rank = [0] * n
    r = -1
    for i in range(n):
        r += is_start[i]
        rank[i] = r
    return np.asarray([rank[cell[v]] for v in range(n)], dtype=np.int64)
