# Copyright 2026 The tactloc Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import tactloc


def small_options(out):
    return {
        "out": str(out),
        "seed": 5,
        "categories": 3,
        "instances_per_category": 4,
        "frames_per_instance": 4,
        "out_domain_per_category": 3,
        "scenes": 4,
        "interactive_scenes": 3,
        "stage1_epochs": 3,
        "stage2_epochs": 2,
        "batch_size": 8,
    }


def test_aggregate_is_spatial_mean():
    rng = np.random.default_rng(0)
    f = rng.normal(size=(5, 3, 4))
    np.testing.assert_allclose(tactloc.aggregate_tactile(f), f.mean(axis=(1, 2)), atol=1e-12)


def test_similarity_map_and_score():
    rng = np.random.default_rng(1)
    d = rng.normal(size=4)
    v = rng.normal(size=(4, 3, 5))
    m = tactloc.similarity_map(d, v)
    want = np.einsum("c,chw->hw", d, v) / (
        np.linalg.norm(d) * np.linalg.norm(v, axis=0))
    np.testing.assert_allclose(m, want, atol=1e-12)
    value, row, col = tactloc.similarity_score(m)
    assert value == m.max()
    assert (row, col) == np.unravel_index(np.argmax(m), m.shape)


def test_infonce_identities():
    assert tactloc.symmetric_infonce(np.array([[0.3]])) == 0.0
    assert abs(tactloc.symmetric_infonce(np.full((2, 2), 0.4)) - math.log(2)) < 1e-12


def test_metrics():
    gt = np.array([[True, False, True, False]])
    assert tactloc.pixel_average_precision(np.array([[0.9, 0.8, 0.7, 0.6]]), gt) == 5 / 6
    a = np.array([[True, True, False]])
    b = np.array([[True, False, True]])
    assert tactloc.region_iou(a, b) == pytest.approx(1 / 3)
    circle = tactloc.baseline_mask("circle", 224, 224)
    assert abs(circle.sum() - math.pi * 112**2) / (math.pi * 112**2) < 0.005


def test_validation_error_is_value_error(tmp_path):
    with pytest.raises(ValueError):
        tactloc.synth({"out": str(tmp_path), "categories": 1})
    with pytest.raises(tactloc.ValidationError):
        tactloc.synth({"no_such_key": 1})


def test_feature_map_round_trip(tmp_path):
    f = np.arange(8 * 14 * 14, dtype=float).reshape(8, 14, 14)
    path = tmp_path / "f.vtft"
    tactloc.save_feature_map(f, path)
    assert path.stat().st_size == 6292
    np.testing.assert_array_equal(tactloc.load_feature_map(path), f)


def test_gradcheck():
    err, ok = tactloc.gradcheck(seed=3)
    assert ok and err < 1e-4


def test_pipeline(tmp_path):
    opts = small_options(tmp_path)
    corpus = tactloc.synth(opts)
    assert corpus["tactile_frames"] == 3 * 4 * 4
    assert tactloc.extract_touch_instances(corpus["manifest"])
    result = tactloc.train(opts)
    assert result["epochs"] == 5
    assert len(result["losses"]) == result["steps"]
    report = tactloc.evaluate(opts)
    assert 0.0 <= report["mIoU"] <= 100.0
    assert report["seed"] == 5
    assert tactloc.evaluate_interactive(opts)["IIoU"] is not None
    assert set(tactloc.robustness(opts)) == {"start", "middle", "end"}


def test_cli_exit_codes(tmp_path):
    assert tactloc.cli(["gradcheck"]) == 0
    assert tactloc.cli(["train", "--out", str(tmp_path)]) == 1
