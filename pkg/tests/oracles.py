"""Independent oracles and strategies shared by the tests."""

import itertools

from dagautomata.core import Dag


def chain(*labels):
    return Dag.build(list(labels), [(i, i + 1) for i in range(len(labels) - 1)])


def brute_isomorphic(g: Dag, h: Dag) -> bool:
    """Try every label-preserving bijection; only for small graphs."""
    if len(g.nodes) != len(h.nodes) or len(g.edges) != len(h.edges):
        return False
    gl = sorted(n.label for n in g.nodes)
    if gl != sorted(n.label for n in h.nodes):
        return False
    g_ids, h_ids = g.node_ids, h.node_ids
    g_edges = sorted((e.src, e.tar, e.label or "") for e in g.edges)
    h_edge_multiset = sorted((e.src, e.tar, e.label or "") for e in h.edges)
    for perm in itertools.permutations(h_ids):
        m = dict(zip(g_ids, perm))
        if any(g.label_of[v] != h.label_of[m[v]] for v in g_ids):
            continue
        if sorted((m[s], m[t], lab) for s, t, lab in g_edges) == h_edge_multiset:
            return True
    return False


def dedup_brute(graphs):
    """Isomorphism classes by pairwise brute-force comparison."""
    reps = []
    for g in graphs:
        if not any(brute_isomorphic(g, h) for h in reps):
            reps.append(g)
    return reps


def naive_complete_derivations(automaton, max_nodes, multi=False):
    """Every complete derivation, with no memoisation and no pruning beyond
    the node budget. Frontier edges are (src, state) pairs; a derived graph is
    returned as (labels, edges)."""
    out = []

    def step(labels, edges, frontier):
        if labels and not frontier:
            out.append((tuple(labels), tuple(edges)))
            return
        if len(labels) >= max_nodes:
            return
        for t in automaton.transitions:
            need = t.lhs.elements()
            if not need:
                if labels and not multi:
                    continue
                choices = [()]
            else:
                if not labels:
                    continue
                choices = [
                    c for c in itertools.combinations(range(len(frontier)), len(need))
                    if sorted(frontier[i][1] for i in c) == sorted(need)
                ]
            for c in choices:
                v = len(labels)
                new_edges = edges + [(frontier[i][0], v) for i in c]
                rest = [f for i, f in enumerate(frontier) if i not in c]
                step(labels + [t.label], new_edges, rest + [(v, q) for q in t.rhs.elements()])

    step([], [], [])
    return out


def rotation_system_planar(n, edges, limit=500_000):
    """Planarity of a simple undirected graph by trying every rotation system
    and checking Euler's formula V - E + F = 2 on each connected component."""
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    # degree <= 1 vertices never affect planarity
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) <= 1:
                for u in adj[v]:
                    adj[u].discard(v)
                del adj[v]
                changed = True
    comps, seen = [], set()
    for v in adj:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(comp)
    return all(_component_planar(c, adj, limit) for c in comps)


def _component_planar(comp, adj, limit):
    nv = len(comp)
    ne = sum(len(adj[v]) for v in comp) // 2
    if ne == 0:
        return True
    options = []
    total = 1
    for v in comp:
        nbrs = sorted(adj[v])
        first, rest = nbrs[0], nbrs[1:]
        perms = [(first,) + p for p in itertools.permutations(rest)]
        total *= len(perms)
        options.append((v, perms))
    if total > limit:
        raise ValueError("graph too large for the rotation-system oracle")
    for choice in itertools.product(*(p for _, p in options)):
        succ = {}
        for (v, _), rot in zip(options, choice):
            for i, u in enumerate(rot):
                succ[(v, u)] = rot[(i + 1) % len(rot)]
        darts = {(v, u) for v in comp for u in adj[v]}
        faces = 0
        while darts:
            start = darts.pop()
            faces += 1
            u, v = start
            while True:
                nxt = (v, succ[(v, u)])
                if nxt == start:
                    break
                darts.discard(nxt)
                u, v = nxt
        if nv - ne + faces == 2:
            return True
    return False


def brute_force_runs(automaton, g):
    """All |Q|^|E| total assignments accepted node by node."""
    from dagautomata.core import Multiset, Run

    eids = [e.id for e in g.edges]
    keys = {t.key for t in automaton.transitions}
    out = set()
    for combo in itertools.product(sorted(automaton.states), repeat=len(eids)):
        r = dict(zip(eids, combo))
        ok = all(
            (
                Multiset(r[e] for e in g.in_edges(v)),
                g.label_of[v],
                Multiset(r[e] for e in g.out_edges(v)),
            )
            in keys
            for v in g.node_ids
        )
        if ok:
            out.add(Run(r))
    return out
