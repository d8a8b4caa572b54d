"""Independent reference computations, built on sympy matrices.

Nothing here calls the package's linear algebra or homological code; only
quivers, relation lists and (for the resolution oracle) the multiplication
table of a finite dimensional algebra are taken as input.
"""

from __future__ import annotations

from collections import defaultdict

import sympy


def rank(vecs) -> int:
    keys = sorted({k for v in vecs for k in v}, key=repr)
    if not vecs or not keys:
        return 0
    return sympy.Matrix([[v.get(k, 0) for k in keys] for v in vecs]).rank()


def nullspace(cols) -> list[dict]:
    keys = sorted({k for v in cols for k in v}, key=repr)
    if not keys:
        return [{i: 1} for i in range(len(cols))]
    M = sympy.Matrix([[c.get(k, 0) for c in cols] for k in keys])
    return [{i: v[i] for i in range(len(cols)) if v[i] != 0} for v in M.nullspace()]


# ---------------------------------------------------------------------------
# dimensions by spanning the two-sided ideal with u * r * v


def ideal_span_dims(quiver, relations, max_len: int, new=frozenset()):
    """``(dim kQ/I, dim of the part of degree >= 1 in the arrows ``new``)``.

    Paths of length < max_len only; the caller picks max_len past the point
    where every path of length max_len - 1 lies in the ideal.
    """
    paths = []
    for n in range(max_len):
        paths += quiver.paths_of_length(n)
    idx = {(p.source, p.target, p.arrows): i for i, p in enumerate(paths)}
    rows = defaultdict(list)
    for r in relations:
        for u in paths:
            for v in paths:
                vec = {}
                for w, c in r.terms.items():
                    if u.target != quiver.arrow(w[0]).source or v.source != quiver.arrow(w[-1]).target:
                        vec = None
                        break
                    word = u.arrows + tuple(w) + v.arrows
                    if len(word) < max_len:
                        k = idx[(u.source, v.target, word)]
                        vec[k] = vec.get(k, 0) + sympy.Rational(c.numerator, c.denominator)
                if vec:
                    k0 = next(iter(vec))
                    rows[(paths[k0].source, paths[k0].target)].append(vec)
    total = extra = 0
    blocks = {(p.source, p.target) for p in paths}
    for s, t in blocks:
        cols = [i for i, p in enumerate(paths) if (p.source, p.target) == (s, t)]
        by_deg = defaultdict(list)
        for i in cols:
            by_deg[sum(a in new for a in paths[i].arrows)].append(i)
        for deg, cc in by_deg.items():
            relevant = [v for v in rows[(s, t)] if any(i in v for i in cc)]
            d = len(cc) - rank([{i: v[i] for i in cc if i in v} for v in relevant])
            total += d
            if deg:
                extra += d
    return total, extra


# ---------------------------------------------------------------------------
# Ext^2_C(DC, C) from minimal projective resolutions of the injectives


def _sum(ds):
    out = {}
    for d in ds:
        for k, v in d.items():
            out[k] = out.get(k, 0) + v
    return out


def ext2_dual_dims(C) -> dict:
    """``{x: dim Ext^2_C(D(C e_x), C)}`` computed from the table of C alone."""
    n = C.dim
    table = C.table
    vertices = C.quiver.vertices

    def mul(i, j):
        return table.get((i, j), {})

    def tgt(i):
        return C.basis[i].target

    def src(i):
        return C.basis[i].source

    rad = [i for i in range(n) if C.basis[i].arrows]

    def times(vec, c):
        out = {}
        for (k, i), a in vec.items():
            for l, b in mul(i, c).items():
                out[(k, l)] = out.get((k, l), 0) + a * b
        return {x: y for x, y in out.items() if y}

    def resolve(action, dim, vert):
        steps = []

        def act0(vec, c):
            v = _sum([{kk: a * vv for kk, vv in action(m, c).items()} for m, a in vec.items()])
            return {k: x for k, x in v.items() if x}

        cur = ([{m: 1} for m in range(dim)], act0, vert)
        for _ in range(3):
            Mb, act, vtx = cur
            if not Mb:
                steps.append([])
                break
            span = [x for x in (act(m, c) for m in Mb for c in rad) if x]
            r = rank(span)
            gens = []
            for m in Mb:
                for v in vertices:
                    part = {k: a for k, a in m.items() if vtx(k) == v}
                    if part and rank(span + [part]) > r:
                        span.append(part)
                        r += 1
                        gens.append((v, part))
            pb = [(g, i) for g, (v, _) in enumerate(gens) for i in range(n) if src(i) == v]
            cols = [act(gens[g][1], i) for g, i in pb]
            K = [{pb[j]: c for j, c in v.items()} for v in nullspace(cols)]
            steps.append(gens)
            cur = (K, times, lambda k: tgt(k[1]))
        return steps

    out = {}
    for x in vertices:
        ending = [i for i in range(n) if tgt(i) == x]
        pos = {p: j for j, p in enumerate(ending)}

        def action(j, c, ending=ending, pos=pos):
            p = ending[j]
            res = {}
            for qq in ending:
                v = mul(c, qq).get(p, 0)
                if v:
                    res[pos[qq]] = v
            return res

        steps = resolve(action, len(ending), lambda j, ending=ending: src(ending[j]))
        P1 = steps[1] if len(steps) > 1 else []
        P2 = steps[2] if len(steps) > 2 else []
        if not P2:
            out[x] = 0
            continue
        cols = []
        for k, (w, _) in enumerate(P1):
            for a in range(n):
                if tgt(a) != w:
                    continue
                img = {}
                for j, (v, el) in enumerate(P2):
                    for (kk, i), c in el.items():
                        if kk != k:
                            continue
                        for l, b in mul(a, i).items():
                            img[(j, l)] = img.get((j, l), 0) + c * b
                cols.append({kk: vv for kk, vv in img.items() if vv})
        hom_p2 = sum(1 for v, _ in P2 for a in range(n) if tgt(a) == v)
        out[x] = hom_p2 - rank(cols)
    return out


# ---------------------------------------------------------------------------
# chordless cycles by brute force over vertex subsets


def chordless_count_bruteforce(quiver) -> int:
    """Vertex sets whose full subquiver, loops ignored, is a cycle graph.

    A pair joined by exactly two arrows counts as a 2-cycle.
    """
    from itertools import combinations

    verts = list(quiver.vertices)
    edges = defaultdict(list)
    for a in quiver.arrows:
        if a.source != a.target:
            edges[frozenset((a.source, a.target))].append(a)
    count = 0
    for k in range(2, len(verts) + 1):
        for S in combinations(verts, k):
            Sset = set(S)
            inside = {e: arrs for e, arrs in edges.items() if e <= Sset}
            if k == 2:
                if len(inside) == 1 and len(next(iter(inside.values()))) == 2:
                    count += 1
                continue
            if len(inside) != k or any(len(a) != 1 for a in inside.values()):
                continue
            deg = defaultdict(int)
            for e in inside:
                for v in e:
                    deg[v] += 1
            if any(deg[v] != 2 for v in S):
                continue
            # connected?
            seen, stack = {S[0]}, [S[0]]
            while stack:
                v = stack.pop()
                for e in inside:
                    if v in e:
                        for w in e:
                            if w not in seen:
                                seen.add(w)
                                stack.append(w)
            if len(seen) == k:
                count += 1
    return count
