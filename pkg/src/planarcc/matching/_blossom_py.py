"""Pure-Python blossom kernel for maximum-weight maximum-cardinality matching.

This is the primal-dual blossom algorithm (Edmonds' algorithm with Galil's
bookkeeping): alternating trees are grown from unmatched vertices, odd
cycles are shrunk into blossoms, and dual variables are adjusted between
growth steps.  Two refinements keep the per-stage cost low:

  - Lazy dual updates: instead of sweeping every vertex after each dual
    adjustment, a per-stage accumulator ``cum`` advances and each vertex
    stores (value, sign, timestamp); the effective dual is reconstructed on
    demand and materialized whenever the vertex's tree role changes.
  - Candidate lists: the three dual-adjustment bounds (free vertex edges,
    S-S edges, T-blossom duals) are tracked in explicit lists fed during
    scanning, so computing the adjustment never scans the whole graph.

The structure follows the classic array-based formulation so that the
compiled twin in _blossom_cy.pyx is a line-for-line translation; keep the
two in sync.

Conventions:
  - Edge weights are integers.  Internally all weights are scaled by 4, and
    vertex duals start at half the maximum incident scaled weight, so every
    dual starts even and all dual updates stay integral throughout (the
    slack of an S-S edge is always even).
  - mate[v] is an edge *endpoint* index p (edge p//2, side p%2), or -1.
  - Blossoms are numbered n..2n-1; vertices double as trivial blossoms.
  - Max-cardinality semantics: vertex duals may go negative, so among all
    maximum-cardinality matchings a maximum-weight one is returned.  Used
    for minimum-weight perfect matching by negating weights.
"""

from __future__ import annotations

# Labels of top-level blossoms within a stage.
_FREE = 0
_S = 1
_T = 2


def solve_max_weight_matching(
    n: int,
    eu: list[int],
    ev: list[int],
    ew: list[int],
    warm: tuple[list[int], list[int]] | None = None,
) -> tuple[list[int], list[int]]:
    """Return (mate, duals): mate[v] is the matched partner of v or -1;
    duals are the final vertex duals in internal units, reusable as a warm
    start for a later solve on the same topology with different weights.

    The caller guarantees a simple graph (no self-loops or duplicates);
    weights must be integers.  ``warm`` is (mate, duals) from a previous
    call: dual feasibility is repaired by raising duals, pairs whose edge
    is no longer tight are broken, and only those get re-augmented.
    """
    nedge = len(eu)
    if n == 0:
        return [], []

    # Weights are scaled by 4 so that the greedy initial duals (half the
    # maximum incident weight, feasible for any sign) are even integers.
    weight = [4 * w for w in ew]

    # endpoint[p]: vertex at endpoint p (p = 2k is the u side of edge k).
    endpoint = [0] * (2 * nedge)
    for k in range(nedge):
        endpoint[2 * k] = eu[k]
        endpoint[2 * k + 1] = ev[k]

    # neighbend[v]: remote endpoints of edges incident to v, in edge order.
    neighbend: list[list[int]] = [[] for _ in range(n)]
    for k in range(nedge):
        neighbend[eu[k]].append(2 * k + 1)
        neighbend[ev[k]].append(2 * k)

    mate = [-1] * n
    label = [_FREE] * (2 * n)
    labelend = [-1] * (2 * n)
    inblossom = list(range(n))
    blossomparent = [-1] * (2 * n)
    blossomchilds: list[list[int] | None] = [None] * (2 * n)
    blossombase = list(range(n)) + [-1] * n
    blossomendps: list[list[int] | None] = [None] * (2 * n)
    bestedge = [-1] * (2 * n)
    blossombestedges: list[list[int] | None] = [None] * (2 * n)
    unusedblossoms = list(range(n, 2 * n))
    dualvar = [0] * (2 * n)
    allowedge = [False] * nedge
    queue: list[int] = []

    # Lazy dual bookkeeping: effective dual of entity x is
    # dualvar[x] + dsgn[x] * (cum - dt0[x]).  Vertices use sign -1 when
    # their top-level blossom is S-labeled and +1 when T-labeled; blossom
    # duals move the other way.
    cum = 0
    dsgn = [0] * (2 * n)
    dt0 = [0] * (2 * n)

    def vdual(v: int) -> int:
        return dualvar[v] + dsgn[v] * (cum - dt0[v])

    def materialize(x: int, sgn: int) -> None:
        dualvar[x] = dualvar[x] + dsgn[x] * (cum - dt0[x])
        dsgn[x] = sgn
        dt0[x] = cum

    def slack(k: int) -> int:
        return vdual(eu[k]) + vdual(ev[k]) - weight[k]

    # Dual-adjustment candidates, fed during scanning and purged lazily:
    # cand_free: free vertices with a least-slack edge to an S-vertex;
    # cand_ss:   top-level S-blossoms with a least-slack edge to another;
    # cand_tb:   top-level nontrivial T-blossoms (expand when dual hits 0).
    cand_free: list[int] = []
    cand_ss: list[int] = []
    cand_tb: list[int] = []

    if warm is None:
        # Greedy initialization: dual = half the max incident weight
        # satisfies du_i + du_j >= weight(i,j) for every edge regardless of
        # signs, and is even.  Then match tight edges between free vertices.
        for v in range(n):
            if neighbend[v]:
                dualvar[v] = max(weight[p // 2] for p in neighbend[v]) // 2
        for k in range(nedge):
            i, j = eu[k], ev[k]
            if mate[i] == -1 and mate[j] == -1 and slack(k) == 0:
                mate[i] = 2 * k + 1
                mate[j] = 2 * k
        # Second pass: where an unmatched vertex's least-slack edge leads to
        # another free vertex, drop its dual to tightness (stays feasible
        # and even) and match the pair.
        for v in range(n):
            if mate[v] == -1 and neighbend[v]:
                best_p = -1
                best_s = -1
                for p in neighbend[v]:
                    s = slack(p // 2)
                    if best_p == -1 or s < best_s:
                        best_s = s
                        best_p = p
                if mate[endpoint[best_p]] == -1:
                    if best_s > 0:
                        dualvar[v] -= best_s
                    k = best_p // 2
                    mate[eu[k]] = 2 * k + 1
                    mate[ev[k]] = 2 * k
    else:
        warm_mate, warm_duals = warm
        for v in range(n):
            dualvar[v] = warm_duals[v]
        for v in range(n):
            u = warm_mate[v]
            if u > v:
                for p in neighbend[v]:
                    if endpoint[p] == u:
                        mate[v] = p
                        mate[u] = p ^ 1
                        break
                else:
                    raise ValueError(f"warm matching uses non-edge ({v},{u})")
        # Restore dual feasibility by raising duals (never creates new
        # violations); split each deficit across both endpoints.
        for k in range(nedge):
            s = slack(k)
            if s < 0:
                a = (-s) // 2
                dualvar[eu[k]] += a
                dualvar[ev[k]] += (-s) - a
        # Matched edges must be tight.  Try to shift one endpoint's dual
        # down (allowed when all its other edges have at least that much
        # slack, so feasibility is kept); otherwise break the pair.
        for k in range(nedge):
            if mate[eu[k]] == 2 * k + 1:
                s = slack(k)
                if s == 0:
                    continue
                retightened = False
                for x in (eu[k], ev[k]):
                    can = True
                    for p in neighbend[x]:
                        if p // 2 != k and slack(p // 2) < s:
                            can = False
                            break
                    if can:
                        dualvar[x] -= s
                        retightened = True
                        break
                if not retightened:
                    mate[eu[k]] = -1
                    mate[ev[k]] = -1
        # Unmatched vertices act as tree roots; even duals keep every dual
        # update integral (see module docstring).
        for v in range(n):
            if mate[v] == -1 and (dualvar[v] & 1):
                dualvar[v] += 1

    def blossom_leaves(b: int):
        if b < n:
            yield b
        else:
            for t in blossomchilds[b]:
                if t < n:
                    yield t
                else:
                    yield from blossom_leaves(t)

    def assign_label(w: int, t: int, p: int) -> None:
        b = inblossom[w]
        assert label[w] == _FREE and label[b] == _FREE
        label[w] = label[b] = t
        labelend[w] = labelend[b] = p
        bestedge[w] = bestedge[b] = -1
        if t == _S:
            if b >= n:
                materialize(b, 1)
            for leaf in blossom_leaves(b):
                materialize(leaf, -1)
                queue.append(leaf)
        else:
            if b >= n:
                materialize(b, -1)
                cand_tb.append(b)
            for leaf in blossom_leaves(b):
                materialize(leaf, 1)
            base = blossombase[b]
            assert mate[base] >= 0
            assign_label(endpoint[mate[base]], _S, mate[base] ^ 1)

    def scan_blossom(v: int, w: int) -> int:
        """Trace back from v and w; return their trees' common ancestor
        base vertex, or -1 if the paths hit distinct roots (augmenting)."""
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            assert label[b] == _S
            path.append(b)
            label[b] = 5
            assert labelend[b] == mate[blossombase[b]]
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                assert label[b] == _T
                assert labelend[b] >= 0
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = _S
        return base

    def add_blossom(base: int, k: int) -> None:
        """Shrink the odd cycle through edge k and blossom base into a new
        S-blossom."""
        v, w = eu[k], ev[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        path = []
        endps = []
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            assert label[bv] == _T or (
                label[bv] == _S and labelend[bv] == mate[blossombase[bv]]
            )
            assert labelend[bv] >= 0
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            assert label[bw] == _T or (
                label[bw] == _S and labelend[bw] == mate[blossombase[bw]]
            )
            assert labelend[bw] >= 0
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        blossomchilds[b] = path
        blossomendps[b] = endps
        assert label[bb] == _S
        label[b] = _S
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        dsgn[b] = 1
        dt0[b] = cum
        # Children stop being top-level: freeze their blossom duals; every
        # vertex inside is now (or stays) an S-vertex.
        for c in path:
            if c >= n:
                materialize(c, 0)
        for leaf in blossom_leaves(b):
            if label[inblossom[leaf]] == _T:
                # Former T-vertices become S-vertices; scan them.
                queue.append(leaf)
            materialize(leaf, -1)
            inblossom[leaf] = b
        # Merge least-slack edge lists toward other S-blossoms.
        bestedgeto = [-1] * (2 * n)
        for bv in path:
            if blossombestedges[bv] is None:
                nblists = [
                    [p // 2 for p in neighbend[leaf]]
                    for leaf in blossom_leaves(bv)
                ]
            else:
                nblists = [blossombestedges[bv]]
            for nblist in nblists:
                for k2 in nblist:
                    i, j = eu[k2], ev[k2]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if (
                        bj != b
                        and label[bj] == _S
                        and (bestedgeto[bj] == -1 or slack(k2) < slack(bestedgeto[bj]))
                    ):
                        bestedgeto[bj] = k2
            blossombestedges[bv] = None
            bestedge[bv] = -1
        blossombestedges[b] = [k2 for k2 in bestedgeto if k2 != -1]
        bestedge[b] = -1
        for k2 in blossombestedges[b]:
            if bestedge[b] == -1 or slack(k2) < slack(bestedge[b]):
                bestedge[b] = k2
        if bestedge[b] != -1:
            cand_ss.append(b)

    def expand_blossom(b: int, endstage: bool) -> None:
        """Undo blossom b: promote its children to top level.  During a
        stage (endstage=False) b is a T-blossom with zero dual; the path
        from its entry child to its base is relabeled."""
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < n:
                inblossom[s] = s
                materialize(s, 0)
            elif endstage and dualvar[s] + dsgn[s] * (cum - dt0[s]) == 0:
                expand_blossom(s, endstage)
            else:
                for v in blossom_leaves(s):
                    inblossom[v] = s
                    materialize(v, 0)
        if (not endstage) and label[b] == _T:
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            j = blossomchilds[b].index(entrychild)
            if j & 1:
                j -= len(blossomchilds[b])
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            # Walk from the entry child to the base, relabeling alternately.
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = _FREE
                label[endpoint[blossomendps[b][j - endptrick] ^ endptrick ^ 1]] = _FREE
                assign_label(endpoint[p ^ 1], _T, p)
                allowedge[blossomendps[b][j - endptrick] // 2] = True
                j += jstep
                p = blossomendps[b][j - endptrick] ^ endptrick
                allowedge[p // 2] = True
                j += jstep
            # Relabel the base T-sub-blossom without stepping to its mate.
            bv = blossomchilds[b][j]
            label[endpoint[p ^ 1]] = label[bv] = _T
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            if bv >= n:
                materialize(bv, -1)
                cand_tb.append(bv)
            for v in blossom_leaves(bv):
                materialize(v, 1)
            # Continue along the cycle; off-path sub-blossoms become free.
            j += jstep
            while blossomchilds[b][j] != entrychild:
                bv = blossomchilds[b][j]
                if label[bv] == _S:
                    j += jstep
                    continue
                for v in blossom_leaves(bv):
                    if label[v] != _FREE:
                        break
                if label[v] != _FREE:
                    assert label[v] == _T
                    assert inblossom[v] == bv
                    label[v] = _FREE
                    label[endpoint[mate[blossombase[bv]]]] = _FREE
                    assign_label(v, _T, labelend[v])
                j += jstep
        label[b] = -1
        labelend[b] = -1
        blossomchilds[b] = None
        blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b: int, v: int) -> None:
        """Flip the matching inside blossom b so that vertex v becomes its
        base (exposed toward the augmenting path)."""
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= n:
            augment_blossom(t, v)
        i = j = blossomchilds[b].index(t)
        if i & 1:
            j -= len(blossomchilds[b])
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = blossomchilds[b][j]
            p = blossomendps[b][j - endptrick] ^ endptrick
            if t >= n:
                augment_blossom(t, endpoint[p])
            j += jstep
            t = blossomchilds[b][j]
            if t >= n:
                augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = blossomchilds[b][i:] + blossomchilds[b][:i]
        blossomendps[b] = blossomendps[b][i:] + blossomendps[b][:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]
        assert blossombase[b] == v

    def augment_matching(k: int) -> None:
        """Augment along the path root(v) ... v -- w ... root(w)."""
        for (s, p) in ((eu[k], 2 * k + 1), (ev[k], 2 * k)):
            while True:
                bs = inblossom[s]
                assert label[bs] == _S
                assert labelend[bs] == mate[blossombase[bs]]
                if bs >= n:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                assert label[bt] == _T
                assert labelend[bt] >= 0
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                assert blossombase[bt] == t
                if bt >= n:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    for _stage in range(n):
        # Materialize all duals, then reset per-stage structures and label
        # unmatched vertices S.
        for v in range(n):
            dualvar[v] += dsgn[v] * (cum - dt0[v])
            dsgn[v] = 0
            dt0[v] = 0
        for b in range(n, 2 * n):
            if blossombase[b] >= 0:
                dualvar[b] += dsgn[b] * (cum - dt0[b])
            dsgn[b] = 0
            dt0[b] = 0
        cum = 0
        for i in range(2 * n):
            label[i] = _FREE
            bestedge[i] = -1
        for i in range(n, 2 * n):
            blossombestedges[i] = None
        for i in range(nedge):
            allowedge[i] = False
        queue.clear()
        cand_free.clear()
        cand_ss.clear()
        cand_tb.clear()
        for v in range(n):
            if mate[v] == -1 and label[inblossom[v]] == _FREE:
                assign_label(v, _S, -1)

        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                assert label[inblossom[v]] == _S
                for p in neighbend[v]:
                    k = p // 2
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == _FREE:
                            assign_label(w, _T, p ^ 1)
                        elif label[inblossom[w]] == _S:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == _FREE:
                            assert label[inblossom[w]] == _T
                            label[w] = _T
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == _S:
                        b = inblossom[v]
                        if bestedge[b] == -1:
                            bestedge[b] = k
                            cand_ss.append(b)
                        elif kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == _FREE:
                        if bestedge[w] == -1:
                            bestedge[w] = k
                            cand_free.append(w)
                        elif kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break

            # Queue exhausted: find the binding dual adjustment among the
            # candidates, purging entries whose condition lapsed.  In
            # max-cardinality mode vertex duals themselves give no bound.
            # An entry is dropped only once its bestedge has been cleared
            # (re-setting it re-registers the entry); a merely mislabeled
            # entry is kept, since expansion can revalidate it without
            # touching bestedge.
            deltatype = -1
            delta = deltaedge = deltablossom = 0
            i = 0
            while i < len(cand_free):
                v = cand_free[i]
                if bestedge[v] == -1:
                    cand_free[i] = cand_free[-1]
                    cand_free.pop()
                    continue
                if label[inblossom[v]] == _FREE:
                    d = slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
                i += 1
            i = 0
            while i < len(cand_ss):
                b = cand_ss[i]
                if bestedge[b] == -1:
                    cand_ss[i] = cand_ss[-1]
                    cand_ss.pop()
                    continue
                if blossomparent[b] == -1 and label[b] == _S:
                    kslack = slack(bestedge[b])
                    assert kslack % 2 == 0
                    d = kslack // 2
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
                i += 1
            i = 0
            while i < len(cand_tb):
                b = cand_tb[i]
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == _T
                ):
                    d = dualvar[b] + dsgn[b] * (cum - dt0[b])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 4
                        deltablossom = b
                    i += 1
                else:
                    cand_tb[i] = cand_tb[-1]
                    cand_tb.pop()

            if deltatype == -1:
                # No further progress possible: maximum cardinality reached.
                break

            # All labeled duals move together; one accumulator records it.
            cum += delta

            if deltatype == 2:
                allowedge[deltaedge] = True
                i = eu[deltaedge]
                if label[inblossom[i]] == _FREE:
                    i = ev[deltaedge]
                assert label[inblossom[i]] == _S
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i = eu[deltaedge]
                assert label[inblossom[i]] == _S
                queue.append(i)
            else:
                expand_blossom(deltablossom, False)

        if not augmented:
            break

        # End of a successful stage: expand S-blossoms whose dual hit zero.
        for b in range(n, 2 * n):
            if (
                blossomparent[b] == -1
                and blossombase[b] >= 0
                and label[b] == _S
                and dualvar[b] + dsgn[b] * (cum - dt0[b]) == 0
            ):
                expand_blossom(b, True)

    # Materialize final duals and translate endpoint mates to vertex mates.
    for v in range(n):
        dualvar[v] += dsgn[v] * (cum - dt0[v])
        dsgn[v] = 0
        dt0[v] = cum
    out = [-1] * n
    for v in range(n):
        if mate[v] >= 0:
            out[v] = endpoint[mate[v]]
    for v in range(n):
        assert out[v] == -1 or out[out[v]] == v
    return out, dualvar[:n]
