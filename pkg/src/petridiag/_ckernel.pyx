# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled search kernels; drop-in replacement for ``_pykernel``.

The net is flattened into CSR arrays (``ptr``/``idx`` per arc direction) and
the marking is a C int buffer mutated in place with fire/unfire pairs.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

from .errors import BudgetExceeded

NAME = "cython"


cdef class _Net:
    cdef int n_t
    cdef int n_p
    cdef int *pre_ptr
    cdef int *pre_idx
    cdef int *post_ptr
    cdef int *post_idx
    cdef int *marking
    cdef int *seq
    cdef int seq_len
    cdef int seq_cap

    def __cinit__(self, pre, post, initial, int seq_cap):
        cdef int t, k, n_pre = 0, n_post = 0
        self.n_t = len(pre)
        self.n_p = len(initial)
        for arcs in pre:
            n_pre += len(arcs)
        for arcs in post:
            n_post += len(arcs)
        self.pre_ptr = <int *> PyMem_Malloc((self.n_t + 1) * sizeof(int))
        self.post_ptr = <int *> PyMem_Malloc((self.n_t + 1) * sizeof(int))
        self.pre_idx = <int *> PyMem_Malloc((n_pre + 1) * sizeof(int))
        self.post_idx = <int *> PyMem_Malloc((n_post + 1) * sizeof(int))
        self.marking = <int *> PyMem_Malloc((self.n_p + 1) * sizeof(int))
        self.seq_cap = seq_cap + 1
        self.seq = <int *> PyMem_Malloc(self.seq_cap * sizeof(int))
        if (not self.pre_ptr or not self.post_ptr or not self.pre_idx
                or not self.post_idx or not self.marking or not self.seq):
            raise MemoryError()
        k = 0
        for t in range(self.n_t):
            self.pre_ptr[t] = k
            for p in pre[t]:
                self.pre_idx[k] = p
                k += 1
        self.pre_ptr[self.n_t] = k
        k = 0
        for t in range(self.n_t):
            self.post_ptr[t] = k
            for p in post[t]:
                self.post_idx[k] = p
                k += 1
        self.post_ptr[self.n_t] = k
        for k in range(self.n_p):
            self.marking[k] = initial[k]
        self.seq_len = 0

    def __dealloc__(self):
        PyMem_Free(self.pre_ptr)
        PyMem_Free(self.post_ptr)
        PyMem_Free(self.pre_idx)
        PyMem_Free(self.post_idx)
        PyMem_Free(self.marking)
        PyMem_Free(self.seq)

    cdef inline bint enabled(self, int t) noexcept:
        cdef int k
        for k in range(self.pre_ptr[t], self.pre_ptr[t + 1]):
            if self.marking[self.pre_idx[k]] < 1:
                return False
        return True

    cdef inline void fire(self, int t) noexcept:
        cdef int k
        for k in range(self.pre_ptr[t], self.pre_ptr[t + 1]):
            self.marking[self.pre_idx[k]] -= 1
        for k in range(self.post_ptr[t], self.post_ptr[t + 1]):
            self.marking[self.post_idx[k]] += 1
        self.seq[self.seq_len] = t
        self.seq_len += 1

    cdef inline void unfire(self, int t) noexcept:
        cdef int k
        self.seq_len -= 1
        for k in range(self.post_ptr[t], self.post_ptr[t + 1]):
            self.marking[self.post_idx[k]] -= 1
        for k in range(self.pre_ptr[t], self.pre_ptr[t + 1]):
            self.marking[self.pre_idx[k]] += 1

    cdef tuple current(self):
        cdef int k
        return tuple([self.seq[k] for k in range(self.seq_len)])

    cdef bytes marking_key(self):
        return (<char *> self.marking)[:self.n_p * sizeof(int)]

    cdef int grow(self) except -1:
        cdef int *buf = <int *> PyMem_Malloc(2 * self.seq_cap * sizeof(int))
        cdef int k
        if not buf:
            raise MemoryError()
        for k in range(self.seq_len):
            buf[k] = self.seq[k]
        PyMem_Free(self.seq)
        self.seq = buf
        self.seq_cap *= 2
        return 0


cdef void _runs(_Net net, int depth, int max_len, list out):
    cdef int t
    if depth == max_len:
        return
    for t in range(net.n_t):
        if net.enabled(t):
            net.fire(t)
            out.append(net.current())
            _runs(net, depth + 1, max_len, out)
            net.unfire(t)


def enumerate_runs(pre, post, initial, int max_len):
    """All fireable sequences of length <= ``max_len``, DFS preorder."""
    cdef _Net net = _Net(pre, post, initial, max_len)
    cdef list out = [()]
    _runs(net, 0, max_len, out)
    return out


cdef class _Search:
    cdef _Net net
    cdef bint ordered
    cdef int total
    cdef int *target
    cdef int *counts
    cdef unsigned char *observable
    cdef int max_unobs
    cdef long max_expl
    cdef list out
    cdef set dead

    def __cinit__(self, _Net net, observable, target, bint ordered, int max_unobs, long max_expl):
        cdef int k, n = len(target)
        self.net = net
        self.ordered = ordered
        self.max_unobs = max_unobs
        self.max_expl = max_expl
        self.out = []
        self.dead = set()
        self.target = <int *> PyMem_Malloc((n + 1) * sizeof(int))
        self.counts = <int *> PyMem_Malloc((n + 1) * sizeof(int))
        self.observable = <unsigned char *> PyMem_Malloc(net.n_t + 1)
        if not self.target or not self.counts or not self.observable:
            raise MemoryError()
        self.total = 0
        for k in range(n):
            self.target[k] = target[k]
            self.counts[k] = target[k]
            self.total += 1 if ordered else target[k]
        for k in range(net.n_t):
            self.observable[k] = 1 if observable[k] else 0

    def __dealloc__(self):
        PyMem_Free(self.target)
        PyMem_Free(self.counts)
        PyMem_Free(self.observable)

    cdef object key(self, int done):
        if self.ordered:
            return (self.net.marking_key(), done)
        return (self.net.marking_key(),
                (<char *> self.counts)[:self.net.n_t * sizeof(int)])

    cdef bint dfs(self, int done, int seg) except -1:
        cdef _Net net = self.net
        cdef int t
        cdef bint obs, found = False
        key = self.key(done)
        if key in self.dead:
            return False
        for t in range(net.n_t):
            if not net.enabled(t):
                continue
            obs = self.observable[t]
            if obs:
                if self.ordered:
                    if self.target[done] != t:
                        continue
                elif self.counts[t] == 0:
                    continue
            elif seg >= self.max_unobs:
                raise BudgetExceeded("max_unobs_segment", self.max_unobs)
            if net.seq_len + 1 >= net.seq_cap:
                net.grow()
            net.fire(t)
            if obs:
                if not self.ordered:
                    self.counts[t] -= 1
                if done + 1 == self.total:
                    self.out.append(net.current())
                    if len(self.out) > self.max_expl:
                        raise BudgetExceeded("max_explanations", self.max_expl)
                    found = True
                elif self.dfs(done + 1, 0):
                    found = True
                if not self.ordered:
                    self.counts[t] += 1
            elif self.dfs(done, seg + 1):
                found = True
            net.unfire(t)
        if not found:
            self.dead.add(key)
        return found


def explain(pre, post, initial, observable, target, bint ordered, int max_unobs, long max_expl):
    """Enumerate explanations; see ``_pykernel.explain`` for the contract."""
    cdef int total = len(target) if ordered else sum(target)
    if total == 0:
        return [()]
    cdef _Net net = _Net(pre, post, initial, total + 16)
    cdef _Search search = _Search(net, observable, target, ordered, max_unobs, max_expl)
    search.dfs(0, 0)
    return search.out
