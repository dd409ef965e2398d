import pytest

from blockposets.blocks import blocks
from blockposets.brauer import BlockContext
from blockposets.fusion import (
    CommutingCategory,
    FusionSystem,
    IsoClassPoset,
    max_brauer_pair,
)
from blockposets.gf import PrimeField
from blockposets.perms import (
    PermGroup,
    Permutation,
    symmetric_group,
)
from blockposets.topology import Poset, poset_iso_check

GF2 = PrimeField(2)


def cyc(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


@pytest.fixture(scope="module")
def s3_contexts():
    G = symmetric_group(3)
    out = blocks(G, GF2)
    principal = next(b for b in out if b.principal)
    other = next(b for b in out if not b.principal)
    return BlockContext(principal), BlockContext(other)


class TestMaxBrauerPair:
    def test_defect_zero(self, s3_contexts):
        _, ctx0 = s3_contexts
        top = max_brauer_pair(ctx0)
        assert top.subgroup.order == 1
        assert top.idempotent == ctx0.block.element

    def test_s3_principal(self, s3_contexts):
        ctx, _ = s3_contexts
        top = max_brauer_pair(ctx)
        assert top.subgroup.order == 2
        # centralizer of a transposition in S3 is the C2 itself: local algebra
        assert len(ctx.blocks_at(top.subgroup)) == 1


class TestFusionSystem:
    def test_hom_contains_identity(self, s3_contexts):
        ctx, _ = s3_contexts
        fs = FusionSystem.from_block_context(ctx)
        for S in fs.family:
            homs = fs.hom(S, S)
            identity_key = tuple(x.images for x in S.elements)
            assert identity_key in {h.key() for h in homs}

    def test_s3_aut_of_c2_trivial(self, s3_contexts):
        ctx, _ = s3_contexts
        fs = FusionSystem.from_block_context(ctx)
        assert len(fs.hom(fs.P, fs.P)) == 1

    def test_s4_hom_counts_by_g_scan(self):
        G = symmetric_group(4)
        (b,) = blocks(G, GF2)
        ctx = BlockContext(b)
        fs = FusionSystem.from_block_context(ctx)
        P = fs.P
        Z = next(S for S in fs.family
                 if S.order == 2 and
                 all(x * y == y * x for x in S.elements for y in P.elements))
        homs = fs.hom(Z, P)
        # oracle: brute force over all 24 group elements, dedup as set maps
        maps = set()
        for g in G.elements:
            ginv = g.inverse()
            if all(ginv * x * g in P.element_set for x in Z.generators):
                maps.add(tuple((ginv * x * g).images for x in Z.elements))
        # principal block: the block side never cuts anything for S4
        assert {h.key() for h in homs} == maps
        assert len(homs) >= 1

    def test_inner_fusion_present(self):
        # maps induced by conjugation inside P itself are always morphisms
        G = symmetric_group(4)
        (b,) = blocks(G, GF2)
        fs = FusionSystem.from_block_context(BlockContext(b))
        P = fs.P
        for S in fs.family:
            if S.order != 2:
                continue
            keys = set()
            for n in P.elements:
                ninv = n.inverse()
                image = frozenset(ninv * x * n for x in S.elements)
                target = next(T for T in fs.family if T.element_set == image)
                keys.add(tuple((ninv * x * n).images for x in S.elements))
                homs = fs.hom(S, target)
                assert tuple((ninv * x * n).images for x in S.elements) in \
                    {h.key() for h in homs}


class TestCommutingCategory:
    def test_c2_single_object(self, s3_contexts):
        ctx, _ = s3_contexts
        fs = FusionSystem.from_block_context(ctx)
        cat = CommutingCategory(fs)
        assert len(cat.objects) == 1
        assert len(cat.hom(0, 0)) == 1

    def test_klein_four_self_fusion(self):
        # the Klein group as its own ambient group: trivial fusion
        V = PermGroup.from_generators(4, [cyc(4, [1, 2]), cyc(4, [3, 4])],
                                      label="V4")
        (b,) = blocks(V, GF2)
        fs = FusionSystem.from_block_context(BlockContext(b))
        cat = CommutingCategory(fs)
        assert len(cat.objects) == 7  # nonempty subsets of 3 subgroups
        icp = IsoClassPoset(cat)
        assert icp.n == 7
        # ordered exactly by subset inclusion
        subset_pairs = [(i, j) for i, a in enumerate(cat.objects)
                        for j, bb in enumerate(cat.objects) if a <= bb]
        expect = Poset.from_leq_pairs([str(o) for o in cat.objects],
                                      subset_pairs)
        fmap = [icp.class_of[i] for i in range(7)]
        ok, _ = poset_iso_check(expect, icp.poset, fmap)
        assert ok

    def test_s4_category_shape(self):
        G = symmetric_group(4)
        (b,) = blocks(G, GF2)
        fs = FusionSystem.from_block_context(BlockContext(b))
        cat = CommutingCategory(fs)          # EI and closure assertions run here
        assert len(cat.objects) == 13        # 5 + 6 + 2 inside a dihedral Sylow
        assert max(len(o) for o in cat.objects) == 3
        icp = IsoClassPoset(cat)
        assert icp.n == 7

    def test_s3_single_class(self, s3_contexts):
        ctx, _ = s3_contexts
        fs = FusionSystem.from_block_context(ctx)
        icp = IsoClassPoset(CommutingCategory(fs))
        assert icp.n == 1

    def test_empty_for_defect_zero(self, s3_contexts):
        _, ctx0 = s3_contexts
        fs = FusionSystem.from_block_context(ctx0)
        cat = CommutingCategory(fs)
        assert cat.objects == []
        assert IsoClassPoset(cat).n == 0
