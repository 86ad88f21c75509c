# Brute-force view entropies for tiny static binary walls, independent of the C++ code.
import itertools
import math
import sys
from collections import defaultdict


def entropy(d):
    return -sum(v * math.log2(v) for v in d.values() if v > 0)


def view_entropies(p, px, L, t):
    lo, hi = -t, t + L - 1
    n = hi - lo + 1
    joint = [defaultdict(float) for _ in range(t + 1)]
    for steps in itertools.product((1, -1), repeat=t):
        pw = math.prod(p if s == 1 else 1 - p for s in steps)
        pos = [0]
        for s in steps:
            pos.append(pos[-1] + s)
        for wall in itertools.product((0, 1), repeat=n):
            pr = pw * math.prod(px if b == 1 else 1 - px for b in wall)
            frames = tuple(tuple(wall[q - lo + j] for j in range(L)) for q in pos)
            for k in range(t + 1):
                joint[k][frames[: k + 1]] += pr
    return [entropy(j) for j in joint]


if __name__ == "__main__":
    h = view_entropies(0.5, 0.5, 2, 2)
    print(repr(h[2] - h[1]))
    h = view_entropies(0.3, 0.3, 2, 3)
    print([repr(h[k + 1] - h[k]) for k in range(3)])
