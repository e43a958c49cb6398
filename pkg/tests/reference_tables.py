"""Size-count tables for the two large corpora, and a reconstruction of
per-size histograms from their aggregated range rows.

A range row only gives the number of hyperedges n, the clique edge count
and the extra-node edge count.  For sizes >= 3 those fix sum(k) = extra and
sum(k^2) = 2 * clique + extra, so any integer histogram inside the range
with those three moments reproduces the row.  ``reconstruct`` finds one.
"""

from __future__ import annotations

import math

# (low, high, count, clique edges, extra-node edges, gain); high None = open
ORGANISATIONS = [
    (1, 1, 9_436_821, None, None, None),
    (2, 2, 5_331_106, 5_331_106, 5_331_106, 1.0),
    (3, 3, 2_294_535, 6_883_605, 6_883_605, 1.0),
    (4, 4, 901_023, 5_406_138, 3_604_092, 1.5),
    (5, 5, 370_669, 3_706_690, 1_853_345, 2.0),
    (6, 10, 377_253, 8_390_494, 2_667_516, 3.15),
    (11, 15, 74_102, 3_572_175, 616_380, 5.80),
    (16, 20, 14_415, 2_110_470, 253_194, 8.34),
    (21, 50, 10_776, 4_617_743, 309_694, 14.91),
    (51, 100, 3_043, 7_387_620, 210_079, 35.16),
    (101, None, 920, 17_637_388, 175_739, 100.36),
]
ORGANISATIONS_SUM = (18_814_663, 65_043_429, 21_904_750, 2.97)

KEYWORDS = [
    (1, 1, 29_203, None, None, None),
    (2, 2, 236_099, 236_099, 236_099, 1.0),
    (3, 3, 1_530_790, 4_592_370, 4_592_370, 1.0),
    (4, 4, 2_568_366, 15_410_196, 10_273_464, 1.5),
    (5, 5, 3_074_370, 30_743_700, 15_371_850, 2.0),
    (6, 10, 2_556_805, 50_053_697, 17_098_753, 2.93),
    (11, 15, 73_330, 4_929_632, 883_074, 5.58),
    (16, 20, 7_570, 1_086_347, 131_676, 8.25),
    (21, 50, 3_243, 1_079_835, 83_424, 12.94),
    (51, 100, 65, 135_482, 4_154, 32.61),
    (101, None, 5, 34_075, 584, 58.35),
]
KEYWORDS_SUM = (10_079_846, 108_301_433, 49_630_119, 2.22)


class Infeasible(ValueError):
    pass


def _spread_step(x, y, d):
    # moving one item x -> x-d and another y -> y+d raises sum(k^2) by this
    return 2 * d * (y - x + d)


def reconstruct(low, high, n, total, squares, max_iter=100_000):
    """Integer histogram on [low, high] with given count, sum and sum of squares."""
    if n == 0:
        if total or squares:
            raise Infeasible("empty row with nonzero moments")
        return {}
    base, extra = divmod(total, n)
    hist = {base: n - extra}
    if extra:
        hist[base + 1] = extra
    if base < low or (high is not None and base + (1 if extra else 0) > high):
        raise Infeasible(f"mean {total / n:.2f} outside [{low}, {high}]")
    need = squares - sum(k * k * c for k, c in hist.items())
    if need < 0 or need % 2:
        raise Infeasible(f"sum of squares unreachable (deficit {need})")
    for _ in range(max_iter):
        if need == 0:
            return {k: c for k, c in sorted(hist.items()) if c}
        present = sorted(k for k, c in hist.items() if c)
        best = None
        for i, x in enumerate(present):
            if x - 1 < low:
                continue
            for y in present[i:]:
                if x == y and hist[x] < 2:
                    continue
                room = x - low if high is None else min(x - low, high - y)
                if room < 1:
                    continue
                # largest d with 2d(y - x + d) <= need
                gap = y - x
                d = int((-gap + math.sqrt(gap * gap + 2 * need)) / 2)
                while d > 0 and _spread_step(x, y, d) > need:
                    d -= 1
                d = min(d, room)
                if d >= 1:
                    step = _spread_step(x, y, d)
                    if best is None or step > best[0]:
                        best = (step, x, y, d)
        if best is None:
            raise Infeasible(f"stuck with deficit {need}")
        step, x, y, d = best
        times = need // step
        times = min(times, hist[x] // 2 if x == y else min(hist[x], hist[y]))
        hist[x] -= times
        hist[y] -= times
        hist[x - d] = hist.get(x - d, 0) + times
        hist[y + d] = hist.get(y + d, 0) + times
        need -= times * step
    raise Infeasible("iteration limit")


def exact_search(low, high, n, total, squares):
    """Depth-first search over nondecreasing size lists; fine for small n."""

    def go(m, lo, rest, rest_sq):
        if m == 0:
            return [] if rest == 0 and rest_sq == 0 else None
        top = rest - (m - 1) * lo
        if high is not None:
            top = min(top, high)
        for k in range(lo, top + 1):
            r, q = rest - k, rest_sq - k * k
            if q < 0 or (m > 1 and (r < (m - 1) * k or q * (m - 1) < r * r)):
                continue
            tail = go(m - 1, k, r, q)
            if tail is not None:
                return [k] + tail
        return None

    sizes = go(n, low, total, squares)
    if sizes is None:
        raise Infeasible("no integer histogram exists")
    hist = {}
    for k in sizes:
        hist[k] = hist.get(k, 0) + 1
    return hist


def row_histogram(row):
    low, high, count, clique, extra, _ = row
    if clique is None:
        return {1: count}
    if low == high:
        return {low: count}
    try:
        return reconstruct(low, high, count, extra, 2 * clique + extra)
    except Infeasible:
        if count > 12:
            raise
        return exact_search(low, high, count, extra, 2 * clique + extra)


if __name__ == "__main__":
    import time
    for name, table in (("organisations", ORGANISATIONS), ("keywords", KEYWORDS)):
        for row in table:
            t = time.time()
            try:
                h = row_histogram(row)
                print(name, row[:2], "ok", len(h), f"{time.time() - t:.3f}s")
            except Infeasible as exc:
                print(name, row[:2], "INFEASIBLE", exc)
