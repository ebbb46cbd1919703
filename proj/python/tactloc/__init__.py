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

"""Touch-conditioned material localization."""

from tactloc._tactloc import (
    ValidationError,
    aggregate_tactile,
    baseline_mask,
    batch_similarity_matrix,
    cli,
    compute_saliency,
    evaluate,
    evaluate_interactive,
    extract_touch_instances,
    gradcheck,
    load_feature_map,
    pixel_average_precision,
    region_iou,
    robustness,
    save_feature_map,
    similarity_map,
    similarity_score,
    symmetric_infonce,
    synth,
    tactile_descriptor,
    train,
    visual_features,
)

__all__ = [
    "ValidationError",
    "aggregate_tactile",
    "baseline_mask",
    "batch_similarity_matrix",
    "cli",
    "compute_saliency",
    "evaluate",
    "evaluate_interactive",
    "extract_touch_instances",
    "gradcheck",
    "load_feature_map",
    "pixel_average_precision",
    "region_iou",
    "robustness",
    "save_feature_map",
    "similarity_map",
    "similarity_score",
    "symmetric_infonce",
    "synth",
    "tactile_descriptor",
    "train",
    "visual_features",
]
