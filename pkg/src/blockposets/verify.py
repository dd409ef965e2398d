"""Verification suites over a block: structured, witness-carrying checks.

Each checker returns a CheckResult that is serializable into the report
format of the command line interface.  The suites:

* blocks-oracle:   recursive splitter vs the exhaustive central-idempotent
                   enumeration, exact idempotent-set equality.
* theorem1:        the expand/collapse maps between the elementary abelian
                   pair poset and the commuting poset are inverse equivariant
                   order maps with one-sided comparison round trips.
* homology:        integral homology of the two order complexes agrees in
                   every degree; Euler characteristics compared regardless.
* nonclique:       clique-complex obstruction search; principal blocks must
                   come back clean.
* principal-type:  every Brauer image is zero or a single block.
* theorem2:        the isomorphism-class poset of the commuting category is
                   isomorphic to the orbit poset of the commuting poset, with
                   the explicit mutually inverse maps.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__
from .blocks import blocks, brute_force_central_idempotents, class_sum_algebra
from .brauer import BlockContext
from .commuting import block_geometry, clique_witness, commuting_graph
from .errors import SizeLimitExceeded
from .fusion import CommutingCategory, FusionSystem, IsoClassPoset
from .topology import (
    SimplicialComplex,
    face_poset,
    homology,
    orbit_poset,
    order_complex,
    poset_iso_check,
    quillen_pair_check,
)

HOMOLOGY_SIMPLEX_BOUND = 100_000


@dataclass
class CheckResult:
    name: str
    target: dict
    status: str               # "pass" | "fail" | "skipped"
    details: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.status == "pass"

    def to_json_dict(self, include_timing=False):
        out = {
            "name": self.name,
            "target": self.target,
            "status": self.status,
            "details": self.details,
            "witnesses": [str(w) for w in self.witnesses],
            "version": __version__,
        }
        if include_timing:
            out["time_s"] = round(self.elapsed, 3)
        return out


def _target(G, F, block=None):
    out = {"group": G.label, "order": G.order, "p": F.p, "d": F.d}
    if block is not None:
        out["block"] = block.index
        out["principal"] = block.principal
    return out


def check_blocks_oracle(G, F, algebra=None, oracle_bound=1 << 20):
    """Blocks from the splitter must equal the brute-force idempotent set."""
    start = time.monotonic()
    A = algebra if algebra is not None else class_sum_algebra(G, F)
    out = blocks(G, F, algebra=A)
    target = _target(G, F)
    try:
        oracle = brute_force_central_idempotents(A, bound=oracle_bound)
    except SizeLimitExceeded as exc:
        return CheckResult("blocks-oracle", target, "skipped",
                           details={"reason": str(exc)},
                           elapsed=time.monotonic() - start)
    computed = sorted(b.coords for b in out)
    expected = sorted(tuple(u) for u in oracle)
    status = "pass" if computed == expected else "fail"
    witnesses = [] if status == "pass" else [computed, expected]
    return CheckResult("blocks-oracle", target, status,
                       details={"count": len(out)},
                       witnesses=witnesses,
                       elapsed=time.monotonic() - start)


def check_theorem1(ctx, geom=None):
    """Inverse equivariant order maps between the two posets of the block."""
    start = time.monotonic()
    if geom is None:
        geom = block_geometry(ctx)
    A, K = geom.aposet, geom.kposet
    cert = quillen_pair_check(A, K, geom.expand_map, geom.collapse_map)
    collapse_expand_identity = all(
        geom.collapse_map[geom.expand_map[i]] == i for i in range(A.n))
    pointwise_below = all(
        K.leq(j, geom.expand_map[geom.collapse_map[j]]) for j in range(K.n))
    ok = cert.ok and collapse_expand_identity and pointwise_below \
        and cert.roundtrip_x == "id=HF"
    details = {
        "pairs": A.n,
        "commuting_elements": K.n,
        "certificate": {
            "forward_order_preserving": cert.forward_order_preserving,
            "backward_order_preserving": cert.backward_order_preserving,
            "forward_equivariant": cert.forward_equivariant,
            "backward_equivariant": cert.backward_equivariant,
            "roundtrip_pairs": cert.roundtrip_x,
            "roundtrip_commuting": cert.roundtrip_y,
        },
        "collapse_expand_is_identity": collapse_expand_identity,
        "pointwise_below_expansion": pointwise_below,
    }
    return CheckResult("theorem1", _target(ctx.G, ctx.F, ctx.block),
                       "pass" if ok else "fail", details=details,
                       witnesses=list(cert.failures),
                       elapsed=time.monotonic() - start)


def check_homology(ctx, geom=None, max_simplices=HOMOLOGY_SIMPLEX_BOUND):
    """Homology of the two order complexes agrees degree by degree."""
    start = time.monotonic()
    if geom is None:
        geom = block_geometry(ctx)
    ca = order_complex(geom.aposet)
    ck = order_complex(geom.kposet)
    target = _target(ctx.G, ctx.F, ctx.block)
    chi_a, chi_k = ca.euler_characteristic(), ck.euler_characteristic()
    details = {
        "simplices": [ca.num_simplices(), ck.num_simplices()],
        "euler_characteristics": [chi_a, chi_k],
    }
    if chi_a != chi_k:
        return CheckResult("homology", target, "fail", details=details,
                           witnesses=["euler characteristic mismatch"],
                           elapsed=time.monotonic() - start)
    if max(ca.num_simplices(), ck.num_simplices()) > max_simplices:
        details["reason"] = "complex exceeds homology bound; Euler check only"
        return CheckResult("homology", target, "skipped", details=details,
                           elapsed=time.monotonic() - start)
    ha, hk = homology(ca), homology(ck)
    details["homology"] = [repr(ha), repr(hk)]
    status = "pass" if ha == hk else "fail"
    return CheckResult("homology", target, status, details=details,
                       witnesses=[] if status == "pass" else [repr(ha), repr(hk)],
                       elapsed=time.monotonic() - start)


def check_nonclique(ctx, geom=None):
    """Obstruction search; a principal block finding one is a failure."""
    start = time.monotonic()
    if geom is None:
        geom = block_geometry(ctx)
    witness = clique_witness(geom)
    target = _target(ctx.G, ctx.F, ctx.block)
    if witness is None:
        return CheckResult("nonclique", target, "pass",
                           details={"obstruction": None},
                           elapsed=time.monotonic() - start)
    details = {
        "obstruction": list(witness.pair_labels),
        "generated_subgroup_order": witness.generated_subgroup.order,
        "brauer_vanishes": witness.brauer_vanishes,
    }
    if ctx.block.principal:
        return CheckResult("nonclique", target, "fail", details=details,
                           witnesses=["principal block cannot have an obstruction"],
                           elapsed=time.monotonic() - start)
    status = "pass" if witness.brauer_vanishes else "fail"
    witnesses = [] if witness.brauer_vanishes else \
        ["obstruction without vanishing Brauer image"]
    return CheckResult("nonclique", target, status, details=details,
                       witnesses=witnesses, elapsed=time.monotonic() - start)


def check_principal_type(ctx):
    start = time.monotonic()
    ok, outcomes, first_failure = ctx.principal_type()
    details = {
        "classes_checked": len(outcomes),
        "zero": sum(1 for _q, o in outcomes if o == "zero"),
        "single_block": sum(1 for _q, o in outcomes if o == "block"),
    }
    witnesses = [] if ok else [first_failure.label]
    return CheckResult("principal-type", _target(ctx.G, ctx.F, ctx.block),
                       "pass" if ok else "fail", details=details,
                       witnesses=witnesses, elapsed=time.monotonic() - start)


def check_theorem2(ctx, geom=None):
    """Iso-class poset of the commuting category vs the orbit poset."""
    start = time.monotonic()
    if geom is None:
        geom = block_geometry(ctx)
    target = _target(ctx.G, ctx.F, ctx.block)
    fs = FusionSystem.from_block_context(ctx)
    cat = CommutingCategory(fs)
    icp = IsoClassPoset(cat)
    quotient, orbit_of = orbit_poset(geom.kposet)
    details = {"iso_classes": icp.n, "orbits": quotient.n,
               "defect_order": fs.P.order}
    if icp.n != quotient.n:
        return CheckResult("theorem2", target, "fail", details=details,
                           witnesses=["cardinality mismatch"],
                           elapsed=time.monotonic() - start)
    if icp.n == 0:
        return CheckResult("theorem2", target, "pass", details=details,
                           elapsed=time.monotonic() - start)
    forward, eta = _theorem2_maps(ctx, geom, fs, cat, icp, orbit_of)
    mutually_inverse = (
        all(eta[forward[c]] == c for c in range(icp.n))
        and all(forward[eta[o]] == o for o in range(quotient.n)))
    iso_ok, iso_witness = poset_iso_check(icp.poset, quotient, forward)
    ok = mutually_inverse and iso_ok
    details["mutually_inverse"] = mutually_inverse
    details["order_isomorphism"] = iso_ok
    witnesses = [] if ok else [iso_witness]
    return CheckResult("theorem2", target, "pass" if ok else "fail",
                       details=details, witnesses=witnesses,
                       elapsed=time.monotonic() - start)


def _theorem2_maps(ctx, geom, fs, cat, icp, orbit_of):
    """The class -> orbit map and its inverse via conjugation into P.

    forward: an object kappa (subgroups of P) decorates, through the unique
    pair below the maximal pair at its product, to a commuting-poset element;
    the orbit must not depend on the member chosen in the class (asserted).

    eta: a commuting-poset element conjugates into P by some g aligning its
    pair with the one below the maximal pair; independence of g is asserted
    on orbit representatives by scanning every admissible g.
    """
    from .errors import TheoryViolation

    vindex = {Q.element_set: i for i, Q in enumerate(geom.vertices)}
    aindex = {pr.ident(): i for i, pr in enumerate(geom.apairs.pairs)}
    kindex = {ke: i for i, ke in enumerate(geom.elements)}

    def object_to_element(obj_idx):
        members = [cat.vertices[v] for v in cat.objects[obj_idx]]
        vids = frozenset(vindex[Q.element_set] for Q in members)
        prod = cat.products[obj_idx]
        pair = fs.sub_pair[prod.element_set]
        return kindex[(vids, aindex[pair.ident()])]

    forward = [None] * icp.n
    for obj_idx in range(len(cat.objects)):
        cls = icp.class_of[obj_idx]
        orbit = orbit_of[object_to_element(obj_idx)]
        if forward[cls] is None:
            forward[cls] = orbit
        elif forward[cls] != orbit:
            raise TheoryViolation("class members land in different orbits",
                                  witness=cat.object_label(obj_idx))

    object_index = {obj: i for i, obj in enumerate(cat.objects)}
    cat_vertex = {Q.element_set: v for v, Q in enumerate(cat.vertices)}
    pset = fs.P.element_set

    def eta_of_element(el_idx, scan_all):
        vids, pid = geom.elements[el_idx]
        members = [geom.vertices[v] for v in vids]
        pair = geom.apairs.pairs[pid]
        prod_gens = pair.subgroup.generators
        results = set()
        for g in ctx.G.elements:
            ginv = g.inverse()
            if any(ginv * x * g not in pset for x in prod_gens):
                continue
            image = frozenset(ginv * x * g
                              for x in pair.subgroup.elements)
            target_pair = fs.sub_pair[image]
            if pair.idempotent.conjugate(g) != target_pair.idempotent:
                continue
            obj = frozenset(
                cat_vertex[frozenset(ginv * x * g for x in Q.elements)]
                for Q in members)
            results.add(icp.class_of[object_index[obj]])
            if not scan_all:
                break
        if not results:
            raise TheoryViolation("no conjugation into the maximal pair found",
                                  witness=geom.kposet.labels[el_idx])
        if len(results) > 1:
            raise TheoryViolation("eta depends on the chosen conjugation",
                                  witness=geom.kposet.labels[el_idx])
        return results.pop()

    eta = [None] * (max(orbit_of) + 1) if orbit_of else []
    seen_orbit_rep = set()
    for el_idx in range(geom.kposet.n):
        orbit = orbit_of[el_idx]
        scan_all = orbit not in seen_orbit_rep
        seen_orbit_rep.add(orbit)
        cls = eta_of_element(el_idx, scan_all)
        if eta[orbit] is None:
            eta[orbit] = cls
        elif eta[orbit] != cls:
            raise TheoryViolation("eta differs across an orbit",
                                  witness=geom.kposet.labels[el_idx])
    return forward, eta


def check_principal_clique_complex(ctx, geom=None):
    """For a principal block: the commuting poset is the face poset of the
    clique complex of the commuting graph on all order-p subgroups."""
    start = time.monotonic()
    if geom is None:
        geom = block_geometry(ctx)
    target = _target(ctx.G, ctx.F, ctx.block)
    if not ctx.block.principal:
        return CheckResult("principal-clique", target, "skipped",
                           details={"reason": "block is not principal"},
                           elapsed=time.monotonic() - start)
    graph = commuting_graph(ctx.G, ctx.p)
    faces = []
    n = len(graph.vertices)
    adj = graph.adjacency

    def extend(clique, candidates):
        m = candidates
        v = 0
        while m:
            if m & 1:
                c2 = clique + (v,)
                faces.append(c2)
                extend(c2, (candidates & ~((1 << (v + 1)) - 1)) & adj[v])
            m >>= 1
            v += 1

    extend((), (1 << n) - 1)
    complex_ = SimplicialComplex.from_faces(faces) if faces \
        else SimplicialComplex([])
    fposet = face_poset(complex_)
    details = {"graph_vertices": n, "cliques": len(faces),
               "commuting_elements": geom.kposet.n}
    # map: clique -> (same vertex set, the unique pair at its product)
    vindex = {Q.element_set: i for i, Q in enumerate(geom.vertices)}
    kindex = {ke: i for i, ke in enumerate(geom.elements)}
    pairs_by_subgroup = {}
    for i, pr in enumerate(geom.apairs.pairs):
        pairs_by_subgroup.setdefault(pr.subgroup.element_set, []).append(i)
    fmap = []
    face_list = [f for fs in complex_.faces_by_dim for f in fs]
    from .commuting import product_subgroup
    for f in face_list:
        members = [graph.vertices[v] for v in f]
        try:
            vids = frozenset(vindex[Q.element_set] for Q in members)
        except KeyError:
            return CheckResult("principal-clique", target, "fail",
                               details=details,
                               witnesses=["vertex missing from the block poset"],
                               elapsed=time.monotonic() - start)
        prod = product_subgroup(members)
        pids = pairs_by_subgroup.get(prod.element_set, [])
        if len(pids) != 1:
            return CheckResult("principal-clique", target, "fail",
                               details=details,
                               witnesses=[f"{len(pids)} pairs at a product"],
                               elapsed=time.monotonic() - start)
        fmap.append(kindex[(vids, pids[0])])
    ok, witness = poset_iso_check(fposet, geom.kposet, fmap)
    return CheckResult("principal-clique", target, "pass" if ok else "fail",
                       details=details,
                       witnesses=[] if ok else [witness],
                       elapsed=time.monotonic() - start)


CHECKS_BY_NAME = {
    "theorem1": check_theorem1,
    "theorem2": check_theorem2,
    "nonclique": check_nonclique,
    "principal-type": lambda ctx, geom=None: check_principal_type(ctx),
    "homology": check_homology,
}


def run_block_checks(block, names, max_simplices=HOMOLOGY_SIMPLEX_BOUND):
    """Run the named suites on one block, sharing one geometry build."""
    ctx = BlockContext(block)
    geom = None
    results = []
    for name in names:
        if name not in CHECKS_BY_NAME:
            raise ValueError(f"unknown check {name!r}")
        if name != "principal-type" and geom is None:
            geom = block_geometry(ctx)
        if name == "homology":
            results.append(check_homology(ctx, geom, max_simplices))
        elif name == "principal-type":
            results.append(check_principal_type(ctx))
        else:
            results.append(CHECKS_BY_NAME[name](ctx, geom))
    return results
