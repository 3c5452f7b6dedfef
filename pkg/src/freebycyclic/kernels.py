"""Hot loops over integer dart arrays.

Dart ``2*i`` is edge ``i`` in its declared direction and ``2*i + 1`` its
reverse, so inversion is ``d ^ 1``. Edge images are passed as a CSR pair
``(img_flat, img_off)`` indexed by dart; images must already be reduced.
"""
import numpy as np

from ._accel import njit


@njit
def tighten_darts(darts):
    out = np.empty(darts.shape[0], np.int64)
    n = 0
    for i in range(darts.shape[0]):
        d = darts[i]
        if n > 0 and out[n - 1] == (d ^ 1):
            n -= 1
        else:
            out[n] = d
            n += 1
    return out[:n].copy()


@njit
def map_tight(darts, img_flat, img_off):
    total = 0
    for i in range(darts.shape[0]):
        total += img_off[darts[i] + 1] - img_off[darts[i]]
    out = np.empty(total, np.int64)
    n = 0
    for i in range(darts.shape[0]):
        d = darts[i]
        for j in range(img_off[d], img_off[d + 1]):
            e = img_flat[j]
            if n > 0 and out[n - 1] == (e ^ 1):
                n -= 1
            else:
                out[n] = e
                n += 1
    return out[:n].copy()


@njit
def iterate_lengths(darts, k, img_flat, img_off):
    """Lengths of the tightened images f^1(p), ..., f^k(p)."""
    lengths = np.empty(k, np.int64)
    cur = darts.copy()
    for i in range(k):
        cur = map_tight(cur, img_flat, img_off)
        lengths[i] = cur.shape[0]
    return lengths


@njit
def _push_image(d, stack, sl, img_flat, img_off):
    a = img_off[d]
    b = img_off[d + 1]
    j = a
    while j < b and sl > 0 and stack[sl - 1] == (img_flat[j] ^ 1):
        sl -= 1
        j += 1
    c = j - a
    while j < b:
        stack[sl] = img_flat[j]
        sl += 1
        j += 1
    return sl, c


@njit
def _pop_image(d, c, stack, sl, img_flat, img_off):
    a = img_off[d]
    sl -= img_off[d + 1] - a - c
    for i in range(c - 1, -1, -1):
        stack[sl] = img_flat[a + i] ^ 1
        sl += 1
    return sl


@njit
def nielsen_loops(v, max_len, prune, out_off, out_darts, term, img_flat, img_off,
                  rec, rec_len):
    """Depth-first search for reduced closed paths p at ``v`` with f#(p) = p.

    The tightened image of the current prefix is kept on a stack and updated
    incrementally, so each search node costs O(|f(d)|). With ``prune`` set,
    the subtree below a Nielsen loop is skipped.

    Found loops are written into ``rec`` (flat darts) and ``rec_len`` while
    capacity lasts. Returns ``(found, darts_needed, nodes_visited)``; callers
    rerun with larger buffers when ``found > len(rec_len)`` or
    ``darts_needed > len(rec)``.
    """
    n_darts = img_off.shape[0] - 1
    max_img = 1
    for d in range(n_darts):
        if img_off[d + 1] - img_off[d] > max_img:
            max_img = img_off[d + 1] - img_off[d]
    path = np.empty(max_len + 1, np.int64)
    cancel = np.empty(max_len + 1, np.int64)
    pos = np.empty(max_len + 1, np.int64)
    stack = np.empty(max_len * max_img + 1, np.int64)
    sl = 0
    found = 0
    used = 0
    nodes = 0
    cap_words = rec_len.shape[0]
    cap_darts = rec.shape[0]

    depth = 0
    pos[0] = out_off[v]
    while depth >= 0:
        cur = v
        if depth > 0:
            cur = term[path[depth - 1]]
        if pos[depth] >= out_off[cur + 1]:
            depth -= 1
            if depth >= 0:
                sl = _pop_image(path[depth], cancel[depth], stack, sl, img_flat, img_off)
            continue
        d = out_darts[pos[depth]]
        pos[depth] += 1
        if depth > 0 and d == (path[depth - 1] ^ 1):
            continue
        nodes += 1
        sl, c = _push_image(d, stack, sl, img_flat, img_off)
        cancel[depth] = c
        path[depth] = d
        n = depth + 1
        is_nielsen = False
        if term[d] == v and sl == n:
            is_nielsen = True
            for i in range(n):
                if stack[i] != path[i]:
                    is_nielsen = False
                    break
        if is_nielsen:
            if found < cap_words and used + n <= cap_darts:
                for i in range(n):
                    rec[used + i] = path[i]
                rec_len[found] = n
            found += 1
            used += n
        if n < max_len and not (is_nielsen and prune):
            depth += 1
            pos[depth] = out_off[term[d]]
        else:
            sl = _pop_image(d, c, stack, sl, img_flat, img_off)
    return found, used, nodes
