import numpy as np
import pytest

from reference import (
    closed_form_noise,
    core_point_set,
    naive_dbscan,
    naive_region_query,
    unique_random_points,
)
from rustseg.dbscan import (
    NOISE,
    DbscanParams,
    build_grid,
    cluster_mask,
    cluster_pixels,
    dbscan,
    decimate_mask,
    filter_clusters,
    mask_to_points,
    region_query,
)


def test_params_validation():
    with pytest.raises(ValueError):
        DbscanParams(eps=0.0)
    with pytest.raises(ValueError):
        DbscanParams(min_pts=0)


def test_mask_to_points_row_major_order():
    mask = np.zeros((3, 4), dtype=bool)
    mask[0, 2] = mask[1, 0] = mask[1, 3] = True
    points = mask_to_points(mask)
    assert points.tolist() == [[2, 0], [0, 1], [3, 1]]


def test_region_query_isolated_point_returns_itself():
    points = np.array([[5, 5]], dtype=np.int64)
    index = build_grid(points, 2.0)
    assert region_query(points, index, 0, 2.0).tolist() == [0]


def test_region_query_includes_distance_exactly_eps():
    points = np.array([[0, 0], [0, 1]], dtype=np.int64)
    index = build_grid(points, 1.0)
    assert region_query(points, index, 0, 1.0).tolist() == [0, 1]
    assert region_query(points, index, 1, 1.0).tolist() == [0, 1]


def test_region_query_matches_brute_force_everywhere():
    rng = np.random.default_rng(7)
    points = unique_random_points(rng, 300, 40)
    for eps in (1.0, 2.5, 4.0):
        index = build_grid(points, eps)
        for i in range(len(points)):
            got = region_query(points, index, i, eps)
            assert got.tolist() == naive_region_query(points, i, eps).tolist()


def test_dbscan_empty_set():
    cs = dbscan(np.empty((0, 2), dtype=np.int64), DbscanParams(eps=1.5, min_pts=3))
    assert cs.clusters == ()
    assert cs.labels.size == 0


def test_dbscan_small_triangle_forms_one_cluster():
    points = np.array([[0, 0], [0, 1], [1, 0]], dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=3))
    assert np.array_equal(cs.labels, naive_dbscan(points, 1.5, 3))
    assert (cs.labels == 0).all()
    assert len(cs.clusters) == 1
    assert cs.clusters[0].pixel_count == 3


def test_dbscan_far_point_is_noise():
    points = np.array([[0, 0], [0, 1], [1, 0], [10, 10]], dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=3))
    assert np.array_equal(cs.labels, naive_dbscan(points, 1.5, 3))
    assert cs.labels[3] == NOISE
    assert cs.labels[:3].tolist() == [0, 0, 0]


def test_dbscan_matches_naive_reference_on_random_sets():
    rng = np.random.default_rng(11)
    for _ in range(10):
        points = unique_random_points(rng, 250, 35)
        for eps, min_pts in ((1.5, 3), (2.0, 5)):
            cs = dbscan(points, DbscanParams(eps=eps, min_pts=min_pts))
            assert np.array_equal(cs.labels, naive_dbscan(points, eps, min_pts))


def test_core_and_noise_sets_are_order_independent():
    rng = np.random.default_rng(13)
    points = unique_random_points(rng, 200, 30)
    params = DbscanParams(eps=2.0, min_pts=4)
    base = dbscan(points, params)
    base_noise = {tuple(p) for p, l in zip(points, base.labels) if l == NOISE}

    for _ in range(3):
        perm = rng.permutation(len(points))
        shuffled = points[perm]
        cs = dbscan(shuffled, params)
        noise = {tuple(p) for p, l in zip(shuffled, cs.labels) if l == NOISE}
        assert noise == base_noise

    assert base_noise == closed_form_noise(points, 2.0, 4)


def test_every_cluster_contains_a_core_point():
    rng = np.random.default_rng(17)
    points = unique_random_points(rng, 220, 30)
    params = DbscanParams(eps=2.0, min_pts=4)
    cs = dbscan(points, params)
    cores = core_point_set(points, 2.0, 4)
    for cluster in cs.clusters:
        members = {tuple(p) for p, l in zip(points, cs.labels) if l == cluster.id}
        assert members & cores
        assert cluster.pixel_count == len(members) >= 1
    non_noise = int((cs.labels >= 0).sum())
    assert sum(c.pixel_count for c in cs.clusters) == non_noise


def test_filter_clusters_identity_at_zero():
    points = np.array([[0, 0], [0, 1], [1, 0]], dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=3))
    kept = filter_clusters(cs, 0)
    assert np.array_equal(kept.labels, cs.labels)
    assert kept.clusters == cs.clusters


def test_filter_clusters_drops_everything_when_min_area_huge():
    points = np.array([[0, 0], [0, 1], [1, 0]], dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=3))
    kept = filter_clusters(cs, 1000)
    assert (kept.labels == NOISE).all()
    assert kept.clusters == ()


def test_filter_clusters_keeps_large_and_compacts_ids():
    # cluster 0: 5 points in a tight line; cluster 1: 7x8 dense block
    small = [(x, 0) for x in range(5)]
    big = [(x + 20, y) for x in range(8) for y in range(7)]
    points = np.array(small + big, dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=3))
    assert len(cs.clusters) == 2
    kept = filter_clusters(cs, 10)
    assert len(kept.clusters) == 1
    assert kept.clusters[0].id == 0
    assert kept.clusters[0].pixel_count == 56
    assert (kept.labels[:5] == NOISE).all()
    assert (kept.labels[5:] == 0).all()


def test_cluster_mask_roundtrip_and_counting():
    rng = np.random.default_rng(19)
    mask = rng.random((20, 30)) < 0.2
    points = mask_to_points(mask)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=1))  # every point core
    out = cluster_mask(cs, 30, 20)
    assert np.array_equal(out, mask)

    filtered = filter_clusters(cs, 3)
    out2 = cluster_mask(filtered, 30, 20)
    assert out2.sum() == sum(c.pixel_count for c in filtered.clusters)
    assert not (out2 & ~mask).any()


def test_cluster_mask_all_noise_is_empty():
    points = np.array([[0, 0], [9, 9]], dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.0, min_pts=3))
    assert not cluster_mask(cs, 10, 10).any()


def test_cluster_mask_bounds_check():
    points = np.array([[0, 0], [0, 1], [1, 0]], dtype=np.int64)
    cs = dbscan(points, DbscanParams(eps=1.5, min_pts=3))
    with pytest.raises(ValueError):
        cluster_mask(cs, 1, 1)


def test_decimate_mask_or_pooling():
    mask = np.zeros((4, 5), dtype=bool)
    mask[0, 0] = True   # block (0,0)
    mask[3, 4] = True   # block (1,2)
    out = decimate_mask(mask)
    assert out.shape == (2, 3)
    assert out[0, 0] and out[1, 2]
    assert out.sum() == 2


def test_cluster_pixels_matches_manual_composition():
    rng = np.random.default_rng(23)
    mask = rng.random((30, 40)) < 0.15
    params = DbscanParams(eps=1.5, min_pts=3)
    cs = cluster_pixels(mask, params, min_area=5)
    manual = filter_clusters(dbscan(mask_to_points(mask), params), 5)
    assert np.array_equal(cs.labels, manual.labels)
    assert cs.clusters == manual.clusters


def test_cluster_pixels_decimated_keeps_exact_counts():
    # two solid blobs, one big and one small, on a large-enough canvas
    mask = np.zeros((60, 80), dtype=bool)
    mask[10:30, 10:40] = True   # 600 px
    mask[45:51, 60:66] = True   # 36 px
    params = DbscanParams(eps=2.0, min_pts=4)
    cs = cluster_pixels(mask, params, min_area=100, decimate=True, decimate_above=100)
    assert len(cs.clusters) == 1
    assert cs.clusters[0].pixel_count == 600
    retained = cluster_mask(cs, 80, 60)
    assert retained.sum() == 600
    assert not (retained & ~mask).any()
    assert sum(c.pixel_count for c in cs.clusters) == int((cs.labels >= 0).sum())
