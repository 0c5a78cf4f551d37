"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria that are provably unattainable as literally stated are split: the
attainable substance is asserted in a regular test, and the impossible
literal reading is kept as a strict xfail carrying the blocking analysis,
so nothing is silently weakened.
"""

import math
import random
import time

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from fivefold.document import patch_to_document, read_tiling, write_tiling
from fivefold.exact import GoldenInt
from fivefold.grouping import (
    SET_B,
    CompositeKind,
    count_tiles,
    detect_composites,
    glue_rhombs,
    verify_grouping,
)
from fivefold.projection import (
    LatticeEnumeration,
    generate_quasilattice,
    scan_offset,
    symmetric_gamma,
)
from fivefold.stats import alloy_check, substitution_counts
from fivefold.svg import RenderOptions, render_svg
from fivefold.triangles import (
    deflate_patch,
    patch_area,
    seed_patch,
    seed_sun,
    seed_wheel,
    symmetry_order,
    validate_patch,
)
from fivefold.weyl import (
    Mat2G,
    check_reflection_conjugacy,
    check_root_axioms,
    group_closure,
    rank4_rotation,
    root_system,
    simple_reflections,
)

PHI = (1 + math.sqrt(5)) / 2
G = GoldenInt
ZERO, ONE, TAU = G(0, 0), G(1, 0), G(0, 1)


def report(num, ok, message):
    print(f"ACCEPTANCE {num:>2} {'PASS' if ok else 'FAIL'}: {message}")
    assert ok, message


@pytest.fixture(scope="module")
def sun_g8():
    return deflate_patch(seed_sun(), 8)


@pytest.fixture(scope="module")
def wheel_g5():
    return deflate_patch(seed_wheel(), 5)


@pytest.fixture(scope="module")
def enum68():
    return LatticeEnumeration(box=8, radius=6.0)


def test_criterion_1_weyl_group(capsys):
    t0 = time.perf_counter()
    s_a, s_b = simple_reflections()
    group = group_closure([s_a, s_b])
    rot = s_a @ s_b
    ok = len(group) == 10
    ok &= rot == Mat2G(-ONE, -TAU, TAU, TAU)
    ok &= rot.power(2) == Mat2G(-TAU, -ONE, ONE, ZERO)
    ok &= rot.power(4) == Mat2G(TAU, TAU, -TAU, -ONE)
    ok &= rot.power(5) == Mat2G.identity()
    # The only order-five-consistent cube of the rotation carries -tau in
    # its corner; the zero-corner variant has determinant +1 with trace 0,
    # which no element of a 10-element dihedral group can have.
    ok &= rot.power(3) == Mat2G(ZERO, ONE, -ONE, -TAU)
    ok &= Mat2G(ZERO, ONE, -ONE, ZERO) not in group
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1.0
    with capsys.disabled():
        report(1, ok, f"closure of 10 exact matrices in {elapsed:.3f}s")


@pytest.mark.xfail(strict=True, reason=(
    "the printed cube of the rotation, [[0,1],[-1,0]], has determinant +1 "
    "and trace 0: an order-4 rotation that cannot belong to an order-10 "
    "dihedral group; the group forces [[0,1],[-1,-tau]], as its product "
    "with the (correctly printed) square being the fifth power confirms"))
def test_criterion_1_literal_printed_cube():
    s_a, s_b = simple_reflections()
    assert (s_a @ s_b).power(3) == Mat2G(ZERO, ONE, -ONE, ZERO)


def test_criterion_2_axioms_and_conjugacy(capsys):
    t0 = time.perf_counter()
    roots = root_system()
    axioms = check_root_axioms(roots)
    conj = check_reflection_conjugacy(group_closure(simple_reflections()), roots)
    elapsed = time.perf_counter() - t0
    ok = axioms.ok and conj.ok and conj.checked == 100 and elapsed < 1.0
    with capsys.disabled():
        report(2, ok, f"R1+R2 and 100 conjugacy pairs exact in {elapsed:.3f}s")


def test_criterion_3_rank4_rotation(capsys):
    t0 = time.perf_counter()
    rng = random.Random(54321)
    ok = True
    for _ in range(10_000):
        z = tuple(rng.randint(-1000, 1000) for _ in range(4))
        out = z
        for _ in range(5):
            out = rank4_rotation(out)
        if out != z:
            ok = False
            break
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1.0
    with capsys.disabled():
        report(3, ok, f"fifth iterate is identity on 10^4 tuples in {elapsed:.3f}s")


def test_criterion_4_deflation_counts(capsys):
    oracle = substitution_counts((1, 0), 10)
    matrix = np.array([[1, 1], [1, 2]], dtype=object)
    vec = np.array([1, 0], dtype=object)
    independent = [(1, 0)]
    for _ in range(10):
        vec = matrix @ vec
        independent.append(tuple(int(x) for x in vec))
    patch = seed_patch("acute")
    actual = [patch.counts()]
    for _ in range(10):
        patch = deflate_patch(patch, 1)
        actual.append(patch.counts())
    acute, obtuse = actual[-1]
    ratio_ok = abs(obtuse / acute - 1.6180339887) < 1e-3
    ok = (actual == oracle == independent
          and actual[:5] == [(1, 0), (1, 1), (2, 3), (5, 8), (13, 21)]
          and ratio_ok)
    with capsys.disabled():
        report(4, ok, f"counts 0..10 match the matrix oracle; "
                      f"final ratio {obtuse / acute:.10f}")


def test_criterion_5_area_conservation(sun_g8, capsys):
    t0 = time.perf_counter()
    seed_area = patch_area(seed_sun())
    deflated_area = patch_area(sun_g8)
    rel = abs(deflated_area - seed_area) / seed_area
    elapsed = time.perf_counter() - t0
    ok = rel < 1e-7 and elapsed < 30.0
    with capsys.disabled():
        report(5, ok, f"{len(sun_g8)} triangles keep area within {rel:.2e} "
                      f"in {elapsed:.1f}s")


def test_criterion_6_symmetry_substance(sun_g8, capsys):
    # Attainable part: the seed has exact rotational order 10; every
    # deflation stays exactly 5-fold about the hub and keeps the mirror
    # symmetry, so the full dihedral symmetry group keeps order 10.
    orders = {}
    patch = seed_sun()
    for g in range(9):
        orders[g] = symmetry_order(patch.vertex_set)
        mirror_ok = frozenset(p.conj() for p in patch.vertex_set) == patch.vertex_set
        if not mirror_ok:
            break
        if g < 8:
            patch = deflate_patch(patch, 1)
    ok = orders[0] == 10 and all(orders[g] == 5 for g in range(1, 9)) and mirror_ok
    with capsys.disabled():
        report(6, ok, "rotational order 10 at g=0, exactly 5 plus an exact "
                      "mirror for g=1..8 (dihedral order 10)")


@pytest.mark.xfail(strict=True, reason=(
    "rotational order 10 for deflated suns is geometrically impossible: "
    "each acute triangle's deflation splits exactly one of its two legs, "
    "so the ten hub legs alternate split/unsplit and the new split "
    "vertices appear on only five of the ten rays from generation 1 on; "
    "the vertex set keeps rotational order 5 (the quoted source likewise "
    "claims invariance under multiples of 72 degrees only)"))
def test_criterion_6_literal_order_ten():
    patch = deflate_patch(seed_sun(), 1)
    assert symmetry_order(patch.vertex_set) == 10


def test_criterion_7_rhomb_ratios(sun_g8, capsys):
    t0 = time.perf_counter()
    counts = count_tiles(glue_rhombs(sun_g8))
    thick = counts[CompositeKind.THICK_RHOMB]
    thin = counts[CompositeKind.THIN_RHOMB]
    r1 = (thick + thin) / thick
    r2 = (thick + thin) / thin
    elapsed = time.perf_counter() - t0
    ok = (abs(r1 - PHI) / PHI < 0.02 and abs(r2 - PHI ** 2) / PHI ** 2 < 0.02
          and elapsed < 60.0)
    with capsys.disabled():
        report(7, ok, f"(thick+thin)/thick={r1:.5f} vs tau, "
                      f"(thick+thin)/thin={r2:.5f} vs tau^2 in {elapsed:.1f}s")


def test_criterion_8_grouping_soundness(wheel_g5, capsys):
    tiling = detect_composites(wheel_g5, SET_B)
    sound = verify_grouping(tiling)
    indices = sorted(i for g in tiling.groups for i in g.indices)
    partition_ok = indices == list(range(len(wheel_g5.triangles)))
    serial = deflate_patch(seed_wheel(), 4, jobs=1)
    threaded = deflate_patch(seed_wheel(), 4, jobs=4)
    jobs_ok = serial.triangles == threaded.triangles
    jobs_ok &= (detect_composites(serial, SET_B).groups
                == detect_composites(threaded, SET_B).groups)
    rhombs = verify_grouping(glue_rhombs(wheel_g5))
    ok = sound.ok and partition_ok and jobs_ok and rhombs.ok
    with capsys.disabled():
        report(8, ok, "isometries re-verified exactly; partition holds; "
                      "grouping independent of worker count")


def test_criterion_9_five_tile_inventory(wheel_g5, capsys):
    tiling = detect_composites(wheel_g5, SET_B)
    counts = {k.value: v for k, v in count_tiles(tiling).items()}
    wanted = {"AcuteTriangle", "ThickRhomb", "Trapezoid", "PentagonBig",
              "PentagonSmall"}
    inventory_ok = all(counts.get(k, 0) > 0 for k in wanted)
    claimed = {g.kind.value for g in tiling.groups
               if g.kind not in (CompositeKind.ACUTE_TRIANGLE,
                                 CompositeKind.OBTUSE_TRIANGLE)}
    policy_ok = claimed <= {k.value for k in SET_B}
    coverage = tiling.coverage()
    ok = inventory_ok and policy_ok and coverage >= 0.60
    with capsys.disabled():
        report(9, ok, f"all five kinds matched, coverage {coverage:.1%} "
                      f"(counts {counts})")


@pytest.mark.xfail(strict=True, reason=(
    "a grouping with no ObtuseTriangle leftover is impossible on a deflated "
    "wheel: the patch boundary contains obtuse base edges from generation 1 "
    "on, an obtuse triangle with its base on the boundary has no mirror "
    "twin, and of the Set-B composites only a pentagon can absorb a "
    "twinless obtuse (as its odd straddler), with O(1) pentagons against "
    "O(tau^g) boundary triangles"))
def test_criterion_9_literal_no_obtuse_leftovers(wheel_g5):
    counts = count_tiles(detect_composites(wheel_g5, SET_B))
    assert counts.get(CompositeKind.OBTUSE_TRIANGLE, 0) == 0


def test_criterion_10_cut_and_project(enum68, capsys):
    t0 = time.perf_counter()
    gamma = (0.01, 0.0137, 0.0071)
    points = generate_quasilattice(6.0, gamma, 8, enumeration=enum68)
    count_ok = 150 <= len(points) <= 600
    xy = np.array([p.xy for p in points])
    min_dist = float(pdist(xy).min())
    scale = math.sqrt(2 / 5)
    embed_err = max(
        max(abs(p.xy[0] - scale * p.cyclo.embed()[0]),
            abs(p.xy[1] - scale * p.cyclo.embed()[1])) for p in points)
    elapsed = time.perf_counter() - t0
    ok = count_ok and min_dist >= 0.3 and embed_err < 1e-9 and elapsed < 60.0
    with capsys.disabled():
        report(10, ok, f"{len(points)} points, min distance {min_dist:.3f}, "
                       f"embedding error {embed_err:.1e} in {elapsed:.1f}s")


def test_criterion_11_five_ten_scan(enum68, capsys):
    t0 = time.perf_counter()
    z10 = symmetric_gamma()
    z5 = (0.0, 0.0, z10[2] + 0.12)
    generic = (0.021, 0.034, z10[2] + 0.19)
    path = [tuple(np.array(z10) + (np.array(z5) - np.array(z10)) * k / 24)
            for k in range(25)]
    path += [tuple(np.array(z5) + (np.array(generic) - np.array(z5)) * k / 24)
             for k in range(1, 26)]
    assert len(path) == 50
    entries = scan_offset(path, 6.0, 8, enumeration=enum68)
    orders = [e.order for e in entries]
    elapsed = time.perf_counter() - t0
    ok = 10 in orders and 5 in orders
    with capsys.disabled():
        report(11, ok, f"50-offset path sees orders {sorted(set(orders))} "
                       f"in {elapsed:.1f}s (10 at the symmetric cut, 5 on "
                       f"the diagonal axis)")


def test_criterion_12_alloy_check(capsys):
    ratio1, k1, dev1 = alloy_check(86, 14)
    ratio2, k2, dev2 = alloy_check(87, 13)
    ok = (f"{ratio1:.10f}" == "6.1428571429"
          and f"{(TAU ** 4).embed():.10f}" == "6.8541019662"
          and k1 == 4 and k2 == 4 and dev2 < dev1)
    with capsys.disabled():
        report(12, ok, f"86:14 -> {ratio1:.10f} vs tau^4 = "
                       f"{(TAU ** 4).embed():.10f}; 87:13 is closer")


def test_criterion_13_round_trip_and_svg(wheel_g5, capsys):
    doc = patch_to_document(wheel_g5)
    blob = write_tiling(doc)
    round_ok = write_tiling(read_tiling(blob)) == blob
    small = patch_to_document(deflate_patch(seed_sun(), 3))
    svg_ok = (render_svg(small, RenderOptions(atoms=True))
              == render_svg(small, RenderOptions(atoms=True)))
    validity_ok = validate_patch(wheel_g5).ok
    ok = round_ok and svg_ok and validity_ok
    with capsys.disabled():
        report(13, ok, "write/read/write is byte-identical; SVG output "
                       "deterministic across runs")
