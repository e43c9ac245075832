# Brute-force SARI for the files in this directory; writes golden.json.
# Counts are pooled over the corpus per n-gram order, precision and recall
# are averaged over n = 1..4, 0/0 counts as 0.
from collections import Counter
import json


def grams(t, n):
    return [tuple(t[i:i + n]) for i in range(len(t) - n + 1)]


src = [l.split() for l in open('source.txt')]
out = [l.split() for l in open('output.txt')]
refs = [[l.split() for l in open(f'ref.{k}')] for k in range(2)]
tot = {op: [[0, 0, 0] for _ in range(4)] for op in ('add', 'keep', 'del')}
for i in range(len(src)):
    rs = [r[i] for r in refs]
    R = len(rs)
    for n in range(1, 5):
        s = Counter(grams(src[i], n))
        o = Counter(grams(out[i], n))
        rc = Counter()
        for r in rs:
            rc += Counter(grams(r, n))
        added = set(o) - set(s)
        tot['add'][n - 1][0] += len(added & set(rc))
        tot['add'][n - 1][1] += len(added)
        tot['add'][n - 1][2] += len(set(rc) - set(s))
        for g, c in s.items():
            sc, oc, r_ = c * R, o[g] * R, rc[g]
            ks, kr = min(sc, oc), min(sc, r_)
            tot['keep'][n - 1][0] += min(ks, kr)
            tot['keep'][n - 1][1] += ks
            tot['keep'][n - 1][2] += kr
            ds, dr = max(sc - oc, 0), max(sc - r_, 0)
            tot['del'][n - 1][0] += min(ds, dr)
            tot['del'][n - 1][1] += ds
            tot['del'][n - 1][2] += dr


def d(a, b):
    return a / b if b else 0.0


def pr(op):
    p = sum(d(c[0], c[1]) for c in tot[op]) / 4
    r = sum(d(c[0], c[2]) for c in tot[op]) / 4
    return p, r


def f(p, r):
    return 2 * p * r / (p + r) if p + r else 0.0


add = 100 * f(*pr('add'))
keep = 100 * f(*pr('keep'))
dele = 100 * pr('del')[0]
with open('golden.json', 'w') as fh:
    json.dump({"sari": (add + keep + dele) / 3, "add": add, "keep": keep, "delete": dele}, fh, indent=2)
    fh.write("\n")
