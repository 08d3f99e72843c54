"""Straight-line re-implementation of seeded permutation hashing.

Used to freeze golden codes for the C++ determinism tests. Shares no code
with the library: seeds, Fisher-Yates and the windowed product argmax are
written out from their definitions.
"""
import sys

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class Stream:
    def __init__(self, seed):
        self.state = seed

    def next(self):
        self.state = (self.state + GAMMA) & MASK
        return mix64(self.state)

    def bounded(self, rng):
        prod = self.next() * rng
        low = prod & MASK
        if low < rng:
            threshold = ((1 << 64) - rng) % rng
            while low < threshold:
                prod = self.next() * rng
                low = prod & MASK
        return prod >> 64


def perm(master, n, i, l):
    seed = mix64(master ^ mix64(((i << 32) | l) + GAMMA & MASK))
    s = Stream(seed)
    out = list(range(n))
    for j in range(n - 1):
        r = j + s.bounded(n - j)
        out[j], out[r] = out[r], out[j]
    return out


def hash_code(x, m, k, p, master):
    n = len(x)
    code = []
    for i in range(m):
        perms = [perm(master, n, i, l) for l in range(p)]
        best, best_j = None, 0
        for j in range(k):
            # factors multiplied in ascending source index, so equal
            # multisets round identically
            prod = 1.0
            for src in sorted(perms[l][j] for l in range(p)):
                prod *= x[src]
            if best is None or prod > best:
                best, best_j = prod, j
        code.append(best_j + 1)
    return code


if __name__ == "__main__":
    # n=8, m=16, p=2, k=4, seed=20170419; x_j = sin(j + 1) (exact in double, same in C++).
    import math
    x = [math.sin(j + 1) for j in range(8)]
    print("perm(seed=42, n=10, i=0, l=0) =", perm(42, 10, 0, 0))
    print("perm(seed=42, n=10, i=3, l=1) =", perm(42, 10, 3, 1))
    print("code =", hash_code(x, 16, 4, 2, 20170419))
    y = [((j * 37) % 23) / 23.0 - 0.4 for j in range(32)]
    print("code32 =", hash_code(y, 24, 7, 3, 0xDEADBEEF))
