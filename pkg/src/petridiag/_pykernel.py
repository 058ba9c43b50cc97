"""Pure-Python search kernels.

Same signatures and results as the compiled ``_ckernel`` module. Nets are
passed in dense form: per-transition tuples of input/output place indices,
an initial token vector and per-transition observable flags. Sequences are
returned as tuples of transition indices.
"""

import sys

from .errors import BudgetExceeded

NAME = "python"


def enumerate_runs(pre, post, initial, max_len):
    """All fireable sequences of length <= ``max_len``, DFS preorder."""
    n_t = len(pre)
    marking = list(initial)
    seq = []
    out = [()]

    def dfs(depth):
        if depth == max_len:
            return
        for t in range(n_t):
            if all(marking[p] for p in pre[t]):
                for p in pre[t]:
                    marking[p] -= 1
                for p in post[t]:
                    marking[p] += 1
                seq.append(t)
                out.append(tuple(seq))
                dfs(depth + 1)
                seq.pop()
                for p in post[t]:
                    marking[p] -= 1
                for p in pre[t]:
                    marking[p] += 1

    dfs(0)
    return out


def explain(pre, post, initial, observable, target, ordered, max_unobs, max_expl):
    """Enumerate explanations of an observation.

    ``ordered``: ``target`` is the observed sequence of transition indices.
    Otherwise ``target`` holds one remaining count per transition and any
    interleaving of the counted events is accepted. Explanations stop at
    their last observable firing. States known to have no completion are
    memoised on (marking, progress).
    """
    n_t = len(pre)
    marking = list(initial)
    counts = None if ordered else list(target)
    total = len(target) if ordered else sum(target)
    if total == 0:
        return [()]
    seq = []
    out = []
    dead = set()

    def dfs(done, seg):
        key = (tuple(marking), done if ordered else tuple(counts))
        if key in dead:
            return False
        found = False
        for t in range(n_t):
            pre_t = pre[t]
            if not all(marking[p] for p in pre_t):
                continue
            obs = observable[t]
            if obs:
                if ordered:
                    if target[done] != t:
                        continue
                elif not counts[t]:
                    continue
            elif seg >= max_unobs:
                raise BudgetExceeded("max_unobs_segment", max_unobs)
            for p in pre_t:
                marking[p] -= 1
            for p in post[t]:
                marking[p] += 1
            seq.append(t)
            if obs:
                if not ordered:
                    counts[t] -= 1
                if done + 1 == total:
                    out.append(tuple(seq))
                    if len(out) > max_expl:
                        raise BudgetExceeded("max_explanations", max_expl)
                    found = True
                elif dfs(done + 1, 0):
                    found = True
                if not ordered:
                    counts[t] += 1
            elif dfs(done, seg + 1):
                found = True
            seq.pop()
            for p in post[t]:
                marking[p] -= 1
            for p in pre_t:
                marking[p] += 1
        if not found:
            dead.add(key)
        return found

    limit = sys.getrecursionlimit()
    # depth is at most one frame per firing; stay well below the C stack
    need = min(total * (max_unobs + 1) + 100, 10_000)
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        dfs(0, 0)
    finally:
        sys.setrecursionlimit(limit)
    return out
