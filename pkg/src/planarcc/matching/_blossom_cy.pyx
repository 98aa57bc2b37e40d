# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled blossom kernel: maximum-weight maximum-cardinality matching.

Line-for-line translation of _blossom_py.py into C arrays; keep the two in
sync.  See that module for the algorithm notes and conventions (scaled
weights, endpoint-encoded mates, greedy initialization, lazy dual updates,
candidate lists).
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

ctypedef long long i64

cdef enum:
    L_FREE = 0
    L_S = 1
    L_T = 2


cdef struct Grower:
    i64 *buf
    i64 length
    i64 cap


cdef inline void grow_push(Grower *g, i64 v) nogil:
    cdef i64 *nb
    if g.length == g.cap:
        g.cap *= 2
        nb = <i64 *> malloc(g.cap * sizeof(i64))
        memcpy(nb, g.buf, g.length * sizeof(i64))
        free(g.buf)
        g.buf = nb
    g.buf[g.length] = v
    g.length += 1


cdef class _Solver:
    cdef:
        i64 n, nedge
        i64 *eu
        i64 *ev
        i64 *weight          # 4x input weights
        i64 *endpoint        # 2m
        i64 *nb_start        # n+1 (CSR adjacency of endpoints)
        i64 *nb_flat         # 2m
        i64 *mate            # n, endpoint index or -1
        i64 *label           # 2n
        i64 *labelend        # 2n
        i64 *inblossom       # n
        i64 *blossomparent   # 2n
        i64 *blossombase     # 2n
        i64 *dualvar         # 2n
        i64 *dsgn            # 2n, lazy dual sign
        i64 *dt0             # 2n, lazy dual timestamp
        i64 cum              # accumulated dual adjustment this stage
        unsigned char *allowedge   # m
        i64 **childs         # 2n
        i64 *childs_len
        i64 **endps          # 2n
        i64 *endps_len
        i64 **bbe            # blossom best-edge lists, 2n
        i64 *bbe_len
        i64 *bestedge        # 2n
        i64 *unusedb         # stack of free blossom ids
        i64 unusedb_top
        Grower queue, cand_free, cand_ss, cand_tb
        i64 *leafbuf         # n
        i64 *lstack          # 2n
        i64 *bestedgeto      # 2n
        i64 *patht           # 2n (add_blossom path)
        i64 *endpst          # 2n (add_blossom endps)
        i64 *rott            # 2n (scratch)
        i64 *scanpath        # 2n (scan_blossom visited list)

    def __cinit__(self, i64 n, i64 nedge):
        cdef i64 i
        self.n = n
        self.nedge = nedge
        self.eu = <i64 *> malloc(max(nedge, 1) * sizeof(i64))
        self.ev = <i64 *> malloc(max(nedge, 1) * sizeof(i64))
        self.weight = <i64 *> malloc(max(nedge, 1) * sizeof(i64))
        self.endpoint = <i64 *> malloc(max(2 * nedge, 1) * sizeof(i64))
        self.nb_start = <i64 *> malloc((n + 1) * sizeof(i64))
        self.nb_flat = <i64 *> malloc(max(2 * nedge, 1) * sizeof(i64))
        self.mate = <i64 *> malloc(n * sizeof(i64))
        self.label = <i64 *> malloc(2 * n * sizeof(i64))
        self.labelend = <i64 *> malloc(2 * n * sizeof(i64))
        self.inblossom = <i64 *> malloc(n * sizeof(i64))
        self.blossomparent = <i64 *> malloc(2 * n * sizeof(i64))
        self.blossombase = <i64 *> malloc(2 * n * sizeof(i64))
        self.dualvar = <i64 *> malloc(2 * n * sizeof(i64))
        self.dsgn = <i64 *> malloc(2 * n * sizeof(i64))
        self.dt0 = <i64 *> malloc(2 * n * sizeof(i64))
        self.allowedge = <unsigned char *> malloc(max(nedge, 1))
        self.childs = <i64 **> malloc(2 * n * sizeof(void *))
        self.childs_len = <i64 *> malloc(2 * n * sizeof(i64))
        self.endps = <i64 **> malloc(2 * n * sizeof(void *))
        self.endps_len = <i64 *> malloc(2 * n * sizeof(i64))
        self.bbe = <i64 **> malloc(2 * n * sizeof(void *))
        self.bbe_len = <i64 *> malloc(2 * n * sizeof(i64))
        self.bestedge = <i64 *> malloc(2 * n * sizeof(i64))
        self.unusedb = <i64 *> malloc(n * sizeof(i64))
        self.queue.cap = 4 * n + 16
        self.queue.length = 0
        self.queue.buf = <i64 *> malloc(self.queue.cap * sizeof(i64))
        self.cand_free.cap = 2 * n + 16
        self.cand_free.length = 0
        self.cand_free.buf = <i64 *> malloc(self.cand_free.cap * sizeof(i64))
        self.cand_ss.cap = 2 * n + 16
        self.cand_ss.length = 0
        self.cand_ss.buf = <i64 *> malloc(self.cand_ss.cap * sizeof(i64))
        self.cand_tb.cap = n + 16
        self.cand_tb.length = 0
        self.cand_tb.buf = <i64 *> malloc(self.cand_tb.cap * sizeof(i64))
        self.leafbuf = <i64 *> malloc(n * sizeof(i64))
        self.lstack = <i64 *> malloc(2 * n * sizeof(i64))
        self.bestedgeto = <i64 *> malloc(2 * n * sizeof(i64))
        self.patht = <i64 *> malloc(2 * n * sizeof(i64))
        self.endpst = <i64 *> malloc(2 * n * sizeof(i64))
        self.rott = <i64 *> malloc(2 * n * sizeof(i64))
        self.scanpath = <i64 *> malloc(2 * n * sizeof(i64))
        for i in range(2 * n):
            self.childs[i] = NULL
            self.endps[i] = NULL
            self.bbe[i] = NULL

    def __dealloc__(self):
        cdef i64 i
        if self.childs != NULL:
            for i in range(2 * self.n):
                if self.childs[i] != NULL:
                    free(self.childs[i])
                if self.endps[i] != NULL:
                    free(self.endps[i])
                if self.bbe[i] != NULL:
                    free(self.bbe[i])
        free(self.eu); free(self.ev); free(self.weight); free(self.endpoint)
        free(self.nb_start); free(self.nb_flat); free(self.mate)
        free(self.label); free(self.labelend); free(self.inblossom)
        free(self.blossomparent); free(self.blossombase); free(self.dualvar)
        free(self.dsgn); free(self.dt0)
        free(self.allowedge); free(self.childs); free(self.childs_len)
        free(self.endps); free(self.endps_len); free(self.bbe); free(self.bbe_len)
        free(self.bestedge); free(self.unusedb)
        free(self.queue.buf); free(self.cand_free.buf)
        free(self.cand_ss.buf); free(self.cand_tb.buf)
        free(self.leafbuf); free(self.lstack); free(self.bestedgeto)
        free(self.patht); free(self.endpst); free(self.rott); free(self.scanpath)

    cdef inline i64 vdual(self, i64 v) nogil:
        return self.dualvar[v] + self.dsgn[v] * (self.cum - self.dt0[v])

    cdef inline void materialize(self, i64 x, i64 sgn) nogil:
        self.dualvar[x] = self.dualvar[x] + self.dsgn[x] * (self.cum - self.dt0[x])
        self.dsgn[x] = sgn
        self.dt0[x] = self.cum

    cdef inline i64 slack(self, i64 k) nogil:
        return self.vdual(self.eu[k]) + self.vdual(self.ev[k]) - self.weight[k]

    cdef i64 leaves(self, i64 b, i64 *buf) nogil:
        """Fill buf with the vertices inside blossom b, in child order."""
        cdef i64 cnt = 0, top = 0, x, i
        if b < self.n:
            buf[0] = b
            return 1
        self.lstack[0] = b
        top = 1
        while top:
            top -= 1
            x = self.lstack[top]
            if x < self.n:
                buf[cnt] = x
                cnt += 1
            else:
                for i in range(self.childs_len[x] - 1, -1, -1):
                    self.lstack[top] = self.childs[x][i]
                    top += 1
        return cnt

    cdef void assign_label(self, i64 w, i64 t, i64 p) nogil:
        cdef i64 b, base, cnt, i
        while True:
            b = self.inblossom[w]
            self.label[w] = t
            self.label[b] = t
            self.labelend[w] = p
            self.labelend[b] = p
            self.bestedge[w] = -1
            self.bestedge[b] = -1
            cnt = self.leaves(b, self.leafbuf)
            if t == L_S:
                if b >= self.n:
                    self.materialize(b, 1)
                for i in range(cnt):
                    self.materialize(self.leafbuf[i], -1)
                    grow_push(&self.queue, self.leafbuf[i])
                return
            # T-label: continue by labeling the base's mate S.
            if b >= self.n:
                self.materialize(b, -1)
                grow_push(&self.cand_tb, b)
            for i in range(cnt):
                self.materialize(self.leafbuf[i], 1)
            base = self.blossombase[b]
            w = self.endpoint[self.mate[base]]
            p = self.mate[base] ^ 1
            t = L_S

    cdef i64 scan_blossom(self, i64 v, i64 w) nogil:
        cdef i64 npath = 0, base = -1, b, i
        while v != -1 or w != -1:
            b = self.inblossom[v]
            if self.label[b] & 4:
                base = self.blossombase[b]
                break
            self.scanpath[npath] = b
            npath += 1
            self.label[b] = 5
            if self.labelend[b] == -1:
                v = -1
            else:
                v = self.endpoint[self.labelend[b]]
                b = self.inblossom[v]
                v = self.endpoint[self.labelend[b]]
            if w != -1:
                v, w = w, v
        for i in range(npath):
            self.label[self.scanpath[i]] = L_S
        return base

    cdef void add_blossom(self, i64 base, i64 k) nogil:
        cdef i64 v = self.eu[k], w = self.ev[k]
        cdef i64 bb = self.inblossom[base]
        cdef i64 bv = self.inblossom[v]
        cdef i64 bw = self.inblossom[w]
        cdef i64 b, nv = 0, nw = 0, i, j, leaf, cnt, k2, nbbe, p
        self.unusedb_top -= 1
        b = self.unusedb[self.unusedb_top]
        self.blossombase[b] = base
        self.blossomparent[b] = -1
        self.blossomparent[bb] = b
        # Trace the v side down to the common base.
        while bv != bb:
            self.blossomparent[bv] = b
            self.patht[nv] = bv
            self.endpst[nv] = self.labelend[bv]
            nv += 1
            v = self.endpoint[self.labelend[bv]]
            bv = self.inblossom[v]
        # Trace the w side (scanpath/rott are free scratch here).
        while bw != bb:
            self.blossomparent[bw] = b
            self.scanpath[nw] = bw
            self.rott[nw] = self.labelend[bw] ^ 1
            nw += 1
            w = self.endpoint[self.labelend[bw]]
            bw = self.inblossom[w]
        # childs = [bb] + reversed(v side) + w side;
        # endps = reversed(v side) + [2k] + w side.
        cdef i64 nch = 1 + nv + nw
        cdef i64 *ch = <i64 *> malloc(nch * sizeof(i64))
        cdef i64 *ep = <i64 *> malloc(nch * sizeof(i64))
        ch[0] = bb
        for i in range(nv):
            ch[1 + i] = self.patht[nv - 1 - i]
            ep[i] = self.endpst[nv - 1 - i]
        ep[nv] = 2 * k
        for i in range(nw):
            ch[1 + nv + i] = self.scanpath[i]
            ep[nv + 1 + i] = self.rott[i]
        self.childs[b] = ch
        self.childs_len[b] = nch
        self.endps[b] = ep
        self.endps_len[b] = nch
        self.label[b] = L_S
        self.labelend[b] = self.labelend[bb]
        self.dualvar[b] = 0
        self.dsgn[b] = 1
        self.dt0[b] = self.cum
        # Children stop being top-level: freeze their blossom duals; every
        # vertex inside is now (or stays) an S-vertex.
        for i in range(nch):
            if ch[i] >= self.n:
                self.materialize(ch[i], 0)
        cnt = self.leaves(b, self.leafbuf)
        for i in range(cnt):
            leaf = self.leafbuf[i]
            if self.label[self.inblossom[leaf]] == L_T:
                grow_push(&self.queue, leaf)
            self.materialize(leaf, -1)
            self.inblossom[leaf] = b
        # Merge least-slack edges toward other top-level S-blossoms.
        for i in range(2 * self.n):
            self.bestedgeto[i] = -1
        for i in range(nch):
            bv = ch[i]
            if self.bbe[bv] == NULL:
                cnt = self.leaves(bv, self.leafbuf)
                for j in range(cnt):
                    leaf = self.leafbuf[j]
                    for p in range(self.nb_start[leaf], self.nb_start[leaf + 1]):
                        self._consider_best(b, self.nb_flat[p] >> 1)
            else:
                for j in range(self.bbe_len[bv]):
                    self._consider_best(b, self.bbe[bv][j])
                free(self.bbe[bv])
                self.bbe[bv] = NULL
            self.bestedge[bv] = -1
        nbbe = 0
        for i in range(2 * self.n):
            if self.bestedgeto[i] != -1:
                nbbe += 1
        cdef i64 *lst = <i64 *> malloc(max(nbbe, 1) * sizeof(i64))
        nbbe = 0
        for i in range(2 * self.n):
            if self.bestedgeto[i] != -1:
                lst[nbbe] = self.bestedgeto[i]
                nbbe += 1
        self.bbe[b] = lst
        self.bbe_len[b] = nbbe
        self.bestedge[b] = -1
        for i in range(nbbe):
            k2 = lst[i]
            if self.bestedge[b] == -1 or self.slack(k2) < self.slack(self.bestedge[b]):
                self.bestedge[b] = k2
        if self.bestedge[b] != -1:
            grow_push(&self.cand_ss, b)

    cdef inline void _consider_best(self, i64 b, i64 k2) nogil:
        cdef i64 i = self.eu[k2], j = self.ev[k2], bj, t
        if self.inblossom[j] == b:
            t = i; i = j; j = t
        bj = self.inblossom[j]
        if bj != b and self.label[bj] == L_S and (
            self.bestedgeto[bj] == -1
            or self.slack(k2) < self.slack(self.bestedgeto[bj])
        ):
            self.bestedgeto[bj] = k2

    cdef void expand_blossom(self, i64 b, bint endstage) nogil:
        cdef i64 i, j, s, v, cnt, jstep, endptrick, p, bv, length, idx, mb
        cdef i64 *ch = self.childs[b]
        cdef i64 nch = self.childs_len[b]
        for i in range(nch):
            s = ch[i]
            self.blossomparent[s] = -1
            if s < self.n:
                self.inblossom[s] = s
                self.materialize(s, 0)
            elif endstage and self.dualvar[s] + self.dsgn[s] * (self.cum - self.dt0[s]) == 0:
                self.expand_blossom(s, endstage)
            else:
                cnt = self.leaves(s, self.leafbuf)
                for j in range(cnt):
                    self.inblossom[self.leafbuf[j]] = s
                    self.materialize(self.leafbuf[j], 0)
        if (not endstage) and self.label[b] == L_T:
            length = nch
            s = self.inblossom[self.endpoint[self.labelend[b] ^ 1]]  # entry child
            j = 0
            while ch[j] != s:
                j += 1
            if j & 1:
                j -= length
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = self.labelend[b]
            while j != 0:
                self.label[self.endpoint[p ^ 1]] = L_FREE
                idx = j - endptrick
                if idx < 0:
                    idx += length
                self.label[self.endpoint[self.endps[b][idx] ^ endptrick ^ 1]] = L_FREE
                self.assign_label(self.endpoint[p ^ 1], L_T, p)
                self.allowedge[self.endps[b][idx] >> 1] = 1
                j += jstep
                idx = j - endptrick
                if idx < 0:
                    idx += length
                p = self.endps[b][idx] ^ endptrick
                self.allowedge[p >> 1] = 1
                j += jstep
            # Relabel the base T-sub-blossom without stepping to its mate.
            bv = ch[0]
            self.label[self.endpoint[p ^ 1]] = L_T
            self.label[bv] = L_T
            self.labelend[self.endpoint[p ^ 1]] = p
            self.labelend[bv] = p
            self.bestedge[bv] = -1
            if bv >= self.n:
                self.materialize(bv, -1)
                grow_push(&self.cand_tb, bv)
            cnt = self.leaves(bv, self.leafbuf)
            for i in range(cnt):
                self.materialize(self.leafbuf[i], 1)
            # Continue along the cycle; off-path sub-blossoms become free.
            j += jstep
            idx = j if j >= 0 else j + length
            while ch[idx] != s:
                bv = ch[idx]
                if self.label[bv] == L_S:
                    j += jstep
                    idx = j if j >= 0 else j + length
                    continue
                cnt = self.leaves(bv, self.leafbuf)
                v = -1
                for i in range(cnt):
                    v = self.leafbuf[i]
                    if self.label[v] != L_FREE:
                        break
                if v != -1 and self.label[v] != L_FREE:
                    self.label[v] = L_FREE
                    mb = self.mate[self.blossombase[bv]]
                    self.label[self.endpoint[mb]] = L_FREE
                    self.assign_label(v, L_T, self.labelend[v])
                j += jstep
                idx = j if j >= 0 else j + length
        self.label[b] = -1
        self.labelend[b] = -1
        free(self.childs[b])
        self.childs[b] = NULL
        free(self.endps[b])
        self.endps[b] = NULL
        self.blossombase[b] = -1
        if self.bbe[b] != NULL:
            free(self.bbe[b])
            self.bbe[b] = NULL
        self.bestedge[b] = -1
        self.unusedb[self.unusedb_top] = b
        self.unusedb_top += 1

    cdef void augment_blossom(self, i64 b, i64 v) nogil:
        cdef i64 t = v, i, j, jstep, endptrick, p, length, idx
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if t >= self.n:
            self.augment_blossom(t, v)
        cdef i64 *ch = self.childs[b]
        cdef i64 *ep = self.endps[b]
        length = self.childs_len[b]
        i = 0
        while ch[i] != t:
            i += 1
        j = i
        if i & 1:
            j -= length
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            idx = j if j >= 0 else j + length
            t = ch[idx]
            idx = j - endptrick
            if idx < 0:
                idx += length
            p = ep[idx] ^ endptrick
            if t >= self.n:
                self.augment_blossom(t, self.endpoint[p])
            j += jstep
            idx = j if j >= 0 else j + length
            t = ch[idx]
            if t >= self.n:
                self.augment_blossom(t, self.endpoint[p ^ 1])
            self.mate[self.endpoint[p]] = p ^ 1
            self.mate[self.endpoint[p ^ 1]] = p
        # Rotate child lists so the entry child becomes the base.
        if i != 0:
            memcpy(self.rott, ch, length * sizeof(i64))
            for j in range(length):
                ch[j] = self.rott[(i + j) % length]
            memcpy(self.rott, ep, length * sizeof(i64))
            for j in range(length):
                ep[j] = self.rott[(i + j) % length]
        self.blossombase[b] = self.blossombase[ch[0]]

    cdef void augment_matching(self, i64 k) nogil:
        cdef i64 s, p, bs, t, bt, j, side
        for side in range(2):
            if side == 0:
                s = self.eu[k]
                p = 2 * k + 1
            else:
                s = self.ev[k]
                p = 2 * k
            while True:
                bs = self.inblossom[s]
                if bs >= self.n:
                    self.augment_blossom(bs, s)
                self.mate[s] = p
                if self.labelend[bs] == -1:
                    break
                t = self.endpoint[self.labelend[bs]]
                bt = self.inblossom[t]
                s = self.endpoint[self.labelend[bt]]
                j = self.endpoint[self.labelend[bt] ^ 1]
                if bt >= self.n:
                    self.augment_blossom(bt, j)
                self.mate[j] = self.labelend[bt]
                p = self.labelend[bt] ^ 1

    cdef solve(self, warm_mate, warm_duals):
        cdef i64 n = self.n, nedge = self.nedge
        cdef i64 i, v, w, k, p, b, stage, base, x, xi
        cdef i64 kslack, d, delta, deltatype, deltaedge, deltablossom
        cdef i64 best_p, best_s, s, a
        cdef bint augmented, found, retightened, can

        self.cum = 0
        for v in range(n):
            self.mate[v] = -1
            self.inblossom[v] = v
            self.blossombase[v] = v
            self.dualvar[v] = 0
        for b in range(n, 2 * n):
            self.blossombase[b] = -1
            self.dualvar[b] = 0
        for i in range(2 * n):
            self.blossomparent[i] = -1
            self.dsgn[i] = 0
            self.dt0[i] = 0
        # Pops take the top, so fill ascending: ids are handed out from
        # 2n-1 downward, matching the pure-Python twin exactly.
        self.unusedb_top = 0
        for b in range(n, 2 * n):
            self.unusedb[self.unusedb_top] = b
            self.unusedb_top += 1

        if warm_mate is None:
            # Greedy initialization (see the pure-Python twin).
            for v in range(n):
                if self.nb_start[v + 1] > self.nb_start[v]:
                    d = self.weight[self.nb_flat[self.nb_start[v]] >> 1]
                    for p in range(self.nb_start[v] + 1, self.nb_start[v + 1]):
                        k = self.nb_flat[p] >> 1
                        if self.weight[k] > d:
                            d = self.weight[k]
                    self.dualvar[v] = d >> 1
            for k in range(nedge):
                i = self.eu[k]
                v = self.ev[k]
                if self.mate[i] == -1 and self.mate[v] == -1 and self.slack(k) == 0:
                    self.mate[i] = 2 * k + 1
                    self.mate[v] = 2 * k
            # Second pass: where an unmatched vertex's least-slack edge
            # leads to another free vertex, drop its dual to tightness and
            # match the pair.
            for v in range(n):
                if self.mate[v] == -1 and self.nb_start[v + 1] > self.nb_start[v]:
                    best_p = -1
                    best_s = -1
                    for p in range(self.nb_start[v], self.nb_start[v + 1]):
                        s = self.slack(self.nb_flat[p] >> 1)
                        if best_p == -1 or s < best_s:
                            best_s = s
                            best_p = self.nb_flat[p]
                    if self.mate[self.endpoint[best_p]] == -1:
                        if best_s > 0:
                            self.dualvar[v] -= best_s
                        k = best_p >> 1
                        self.mate[self.eu[k]] = 2 * k + 1
                        self.mate[self.ev[k]] = 2 * k
        else:
            # Warm start: repair dual feasibility by raising duals (split
            # across both endpoints), re-tighten or break non-tight matched
            # pairs, even-ize root duals.
            for v in range(n):
                self.dualvar[v] = warm_duals[v]
            for v in range(n):
                w = warm_mate[v]
                if w > v:
                    found = False
                    for p in range(self.nb_start[v], self.nb_start[v + 1]):
                        if self.endpoint[self.nb_flat[p]] == w:
                            self.mate[v] = self.nb_flat[p]
                            self.mate[w] = self.nb_flat[p] ^ 1
                            found = True
                            break
                    if not found:
                        raise ValueError(f"warm matching uses non-edge ({v},{w})")
            for k in range(nedge):
                s = self.slack(k)
                if s < 0:
                    a = (-s) // 2
                    self.dualvar[self.eu[k]] += a
                    self.dualvar[self.ev[k]] += (-s) - a
            for k in range(nedge):
                if self.mate[self.eu[k]] == 2 * k + 1:
                    s = self.slack(k)
                    if s == 0:
                        continue
                    retightened = False
                    for xi in range(2):
                        x = self.eu[k] if xi == 0 else self.ev[k]
                        can = True
                        for p in range(self.nb_start[x], self.nb_start[x + 1]):
                            if (self.nb_flat[p] >> 1) != k and self.slack(self.nb_flat[p] >> 1) < s:
                                can = False
                                break
                        if can:
                            self.dualvar[x] -= s
                            retightened = True
                            break
                    if not retightened:
                        self.mate[self.eu[k]] = -1
                        self.mate[self.ev[k]] = -1
            for v in range(n):
                if self.mate[v] == -1 and (self.dualvar[v] & 1):
                    self.dualvar[v] += 1

        for stage in range(n):
            # Materialize all duals, then reset per-stage structures and
            # label unmatched vertices S.
            for v in range(n):
                self.dualvar[v] += self.dsgn[v] * (self.cum - self.dt0[v])
                self.dsgn[v] = 0
                self.dt0[v] = 0
            for b in range(n, 2 * n):
                if self.blossombase[b] >= 0:
                    self.dualvar[b] += self.dsgn[b] * (self.cum - self.dt0[b])
                self.dsgn[b] = 0
                self.dt0[b] = 0
            self.cum = 0
            for i in range(2 * n):
                self.label[i] = L_FREE
                self.bestedge[i] = -1
            for b in range(n, 2 * n):
                if self.bbe[b] != NULL:
                    free(self.bbe[b])
                    self.bbe[b] = NULL
            for k in range(nedge):
                self.allowedge[k] = 0
            self.queue.length = 0
            self.cand_free.length = 0
            self.cand_ss.length = 0
            self.cand_tb.length = 0
            for v in range(n):
                if self.mate[v] == -1 and self.label[self.inblossom[v]] == L_FREE:
                    self.assign_label(v, L_S, -1)

            augmented = False
            while True:
                while self.queue.length > 0 and not augmented:
                    self.queue.length -= 1
                    v = self.queue.buf[self.queue.length]
                    for p in range(self.nb_start[v], self.nb_start[v + 1]):
                        k = self.nb_flat[p] >> 1
                        w = self.endpoint[self.nb_flat[p]]
                        if self.inblossom[v] == self.inblossom[w]:
                            continue
                        kslack = 0
                        if not self.allowedge[k]:
                            kslack = self.slack(k)
                            if kslack <= 0:
                                self.allowedge[k] = 1
                        if self.allowedge[k]:
                            if self.label[self.inblossom[w]] == L_FREE:
                                self.assign_label(w, L_T, self.nb_flat[p] ^ 1)
                            elif self.label[self.inblossom[w]] == L_S:
                                base = self.scan_blossom(v, w)
                                if base >= 0:
                                    self.add_blossom(base, k)
                                else:
                                    self.augment_matching(k)
                                    augmented = True
                                    break
                            elif self.label[w] == L_FREE:
                                self.label[w] = L_T
                                self.labelend[w] = self.nb_flat[p] ^ 1
                        elif self.label[self.inblossom[w]] == L_S:
                            b = self.inblossom[v]
                            if self.bestedge[b] == -1:
                                self.bestedge[b] = k
                                grow_push(&self.cand_ss, b)
                            elif kslack < self.slack(self.bestedge[b]):
                                self.bestedge[b] = k
                        elif self.label[w] == L_FREE:
                            if self.bestedge[w] == -1:
                                self.bestedge[w] = k
                                grow_push(&self.cand_free, w)
                            elif kslack < self.slack(self.bestedge[w]):
                                self.bestedge[w] = k
                if augmented:
                    break

                # Queue exhausted: find the binding dual adjustment among
                # the candidates.  An entry is dropped only once its
                # bestedge has been cleared (re-setting it re-registers the
                # entry); a merely mislabeled entry is kept, since
                # expansion can revalidate it without touching bestedge.
                deltatype = -1
                delta = 0
                deltaedge = -1
                deltablossom = -1
                i = 0
                while i < self.cand_free.length:
                    v = self.cand_free.buf[i]
                    if self.bestedge[v] == -1:
                        self.cand_free.length -= 1
                        self.cand_free.buf[i] = self.cand_free.buf[self.cand_free.length]
                        continue
                    if self.label[self.inblossom[v]] == L_FREE:
                        d = self.slack(self.bestedge[v])
                        if deltatype == -1 or d < delta:
                            delta = d
                            deltatype = 2
                            deltaedge = self.bestedge[v]
                    i += 1
                i = 0
                while i < self.cand_ss.length:
                    b = self.cand_ss.buf[i]
                    if self.bestedge[b] == -1:
                        self.cand_ss.length -= 1
                        self.cand_ss.buf[i] = self.cand_ss.buf[self.cand_ss.length]
                        continue
                    if self.blossomparent[b] == -1 and self.label[b] == L_S:
                        kslack = self.slack(self.bestedge[b])
                        d = kslack >> 1
                        if deltatype == -1 or d < delta:
                            delta = d
                            deltatype = 3
                            deltaedge = self.bestedge[b]
                    i += 1
                i = 0
                while i < self.cand_tb.length:
                    b = self.cand_tb.buf[i]
                    if (
                        self.blossombase[b] >= 0
                        and self.blossomparent[b] == -1
                        and self.label[b] == L_T
                    ):
                        d = self.dualvar[b] + self.dsgn[b] * (self.cum - self.dt0[b])
                        if deltatype == -1 or d < delta:
                            delta = d
                            deltatype = 4
                            deltablossom = b
                        i += 1
                    else:
                        self.cand_tb.length -= 1
                        self.cand_tb.buf[i] = self.cand_tb.buf[self.cand_tb.length]

                if deltatype == -1:
                    break  # maximum cardinality reached

                # All labeled duals move together; one accumulator records it.
                self.cum += delta

                if deltatype == 2:
                    self.allowedge[deltaedge] = 1
                    i = self.eu[deltaedge]
                    if self.label[self.inblossom[i]] == L_FREE:
                        i = self.ev[deltaedge]
                    grow_push(&self.queue, i)
                elif deltatype == 3:
                    self.allowedge[deltaedge] = 1
                    grow_push(&self.queue, self.eu[deltaedge])
                else:
                    self.expand_blossom(deltablossom, False)

            if not augmented:
                break

            for b in range(n, 2 * n):
                if (
                    self.blossomparent[b] == -1
                    and self.blossombase[b] >= 0
                    and self.label[b] == L_S
                    and self.dualvar[b] + self.dsgn[b] * (self.cum - self.dt0[b]) == 0
                ):
                    self.expand_blossom(b, True)

        # Materialize final duals and translate endpoint mates to vertices.
        out = [-1] * n
        duals = [0] * n
        for v in range(n):
            self.dualvar[v] += self.dsgn[v] * (self.cum - self.dt0[v])
            self.dsgn[v] = 0
            self.dt0[v] = self.cum
            if self.mate[v] >= 0:
                out[v] = self.endpoint[self.mate[v]]
            duals[v] = self.dualvar[v]
        return out, duals


def solve_max_weight_matching(n, eu, ev, ew, warm=None):
    """Return (mate, duals); same contract as the pure-Python twin.

    Weights must be integers with |w| <= 2**52 (callers validate).
    """
    cdef i64 cn = n
    cdef i64 nedge = len(eu)
    if cn == 0:
        return [], []
    cdef _Solver s = _Solver(cn, nedge)
    cdef i64 k, v, pos
    for k in range(nedge):
        s.eu[k] = eu[k]
        s.ev[k] = ev[k]
        s.weight[k] = 4 * <i64> ew[k]
        s.endpoint[2 * k] = s.eu[k]
        s.endpoint[2 * k + 1] = s.ev[k]
    # CSR adjacency of remote endpoints, in edge order per vertex.
    for v in range(cn + 1):
        s.nb_start[v] = 0
    for k in range(nedge):
        s.nb_start[s.eu[k] + 1] += 1
        s.nb_start[s.ev[k] + 1] += 1
    for v in range(cn):
        s.nb_start[v + 1] += s.nb_start[v]
    cdef i64 *fill = <i64 *> malloc(cn * sizeof(i64))
    for v in range(cn):
        fill[v] = 0
    for k in range(nedge):
        v = s.eu[k]
        pos = s.nb_start[v] + fill[v]
        s.nb_flat[pos] = 2 * k + 1
        fill[v] += 1
        v = s.ev[k]
        pos = s.nb_start[v] + fill[v]
        s.nb_flat[pos] = 2 * k
        fill[v] += 1
    free(fill)
    if warm is None:
        return s.solve(None, None)
    return s.solve(warm[0], warm[1])
