// Copyright 2026 The tactloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/iostream.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <vector>

#include "tactloc/alignment.h"
#include "tactloc/dataset.h"
#include "tactloc/errors.h"
#include "tactloc/feature_file.h"
#include "tactloc/manifest.h"
#include "tactloc/metrics.h"
#include "tactloc/pipeline.h"
#include "tactloc/report.h"
#include "tactloc/saliency.h"
#include "tactloc/split.h"
#include "tactloc/touch_instance.h"
#include "cli.h"

namespace py = pybind11;
using namespace tactloc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

FeatureMap to_feature_map(const Array& a) {
  if (a.ndim() != 3) throw std::invalid_argument("expected a C x H x W array");
  const auto c = static_cast<std::size_t>(a.shape(0));
  const auto h = static_cast<std::size_t>(a.shape(1));
  const auto w = static_cast<std::size_t>(a.shape(2));
  return FeatureMap(c, h, w, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Tensor& t) {
  std::vector<py::ssize_t> shape(t.shape().begin(), t.shape().end());
  Array out(shape);
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

Array to_array(const std::vector<double>& v, std::vector<py::ssize_t> shape) {
  Array out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const Array& a) {
  return std::vector<double>(a.data(), a.data() + a.size());
}

MaskImage to_mask(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected an H x W mask");
  std::vector<std::uint8_t> bits(a.data(), a.data() + a.size());
  return MaskImage(static_cast<std::size_t>(a.shape(1)), static_cast<std::size_t>(a.shape(0)),
                   std::move(bits));
}

py::array_t<bool> from_mask(const MaskImage& m) {
  py::array_t<bool> out({static_cast<py::ssize_t>(m.height()),
                         static_cast<py::ssize_t>(m.width())});
  for (std::size_t i = 0; i < m.pixel_count(); ++i) out.mutable_data()[i] = m[i];
  return out;
}

LossConfig loss_config(double temperature, bool cosine) {
  LossConfig c;
  c.temperature = temperature;
  c.cosine = cosine;
  c.validate();
  return c;
}

RunConfig run_config(const std::map<std::string, py::object>& options) {
  RunConfig c;
  for (const auto& [key, value] : options) {
    std::string text;
    if (py::isinstance<py::bool_>(value)) {
      text = value.cast<bool>() ? "true" : "false";
    } else {
      text = py::str(value).cast<std::string>();
    }
    c.set(key, text);
  }
  c.apply_preset();
  return c;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["label"] = r.label;
  d["seed"] = r.seed;
  d["samples"] = r.sample_count;
  d["mAP"] = r.map;
  d["mIoU"] = r.miou;
  d["IIoU"] = r.iiou ? py::cast(*r.iiou) : py::none();
  py::dict cats;
  for (const auto& [name, m] : r.categories) {
    py::dict c;
    c["samples"] = m.samples;
    c["mAP"] = m.map;
    c["mIoU"] = m.miou;
    cats[py::str(name)] = c;
  }
  d["categories"] = cats;
  py::list samples;
  for (const SampleMetrics& s : r.samples) {
    py::dict e;
    e["sample_id"] = s.sample_id;
    e["category"] = s.category;
    e["ap"] = s.ap;
    e["iou"] = s.iou;
    samples.append(e);
  }
  d["per_sample"] = samples;
  return d;
}

py::dict instance_dict(const TouchInstance& t) {
  py::dict d;
  d["instance_id"] = t.instance_id;
  d["video_id"] = t.video_id;
  d["category"] = t.category;
  d["start"] = t.start;
  d["end"] = t.end;
  d["members"] = t.members;
  return d;
}

}  // namespace

PYBIND11_MODULE(_tactloc, m) {
  m.doc() = "Touch-conditioned material localization: core operations.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("aggregate_tactile",
        [](const Array& f) { return aggregate_tactile(to_feature_map(f)).values; },
        py::arg("features"), "Spatial mean of a C x H x W tactile feature map.");
  m.def(
      "similarity_map",
      [](const Array& desc, const Array& visual, double temperature, bool cosine) {
        TactileDescriptor d{to_vector(desc), DescriptorSource::kSingleFrame};
        return to_array(
            similarity_map(d, to_feature_map(visual), loss_config(temperature, cosine)).values);
      },
      py::arg("descriptor"), py::arg("visual"), py::arg("temperature") = 0.07,
      py::arg("cosine") = true);
  m.def(
      "similarity_score",
      [](const Array& map) {
        std::vector<std::size_t> shape(map.shape(), map.shape() + map.ndim());
        const SimilarityPeak p = similarity_score(Tensor(shape, to_vector(map)));
        return py::make_tuple(p.value, p.row, p.col);
      },
      py::arg("map"), "(max value, row, col) with the first maximum in row-major order.");
  m.def(
      "batch_similarity_matrix",
      [](const std::vector<Array>& tactile, const std::vector<Array>& visual,
         double temperature, bool cosine) {
        std::vector<FeatureMap> t, v;
        for (const Array& a : tactile) t.push_back(to_feature_map(a));
        for (const Array& a : visual) v.push_back(to_feature_map(a));
        return to_array(batch_similarity_matrix(t, v, loss_config(temperature, cosine)));
      },
      py::arg("tactile"), py::arg("visual"), py::arg("temperature") = 0.07,
      py::arg("cosine") = true);
  m.def(
      "symmetric_infonce",
      [](const Array& s, double temperature, bool cosine) {
        std::vector<std::size_t> shape(s.shape(), s.shape() + s.ndim());
        return symmetric_infonce(Tensor(shape, to_vector(s)), loss_config(temperature, cosine));
      },
      py::arg("similarity"), py::arg("temperature") = 0.07, py::arg("cosine") = true);

  m.def(
      "compute_saliency",
      [](const Array& visual, const Array& desc, std::size_t width, std::size_t height,
         double temperature, bool cosine) {
        const SaliencyMap s =
            compute_saliency(to_feature_map(visual), {to_vector(desc), DescriptorSource::kSingleFrame},
                             loss_config(temperature, cosine), width, height);
        return to_array(s.scores, {static_cast<py::ssize_t>(height),
                                   static_cast<py::ssize_t>(width)});
      },
      py::arg("visual"), py::arg("descriptor"), py::arg("width"), py::arg("height"),
      py::arg("temperature") = 0.07, py::arg("cosine") = true);
  m.def(
      "region_iou",
      [](const py::array_t<bool>& pred, const py::array_t<bool>& gt) {
        return region_iou(to_mask(pred), to_mask(gt));
      },
      py::arg("pred"), py::arg("gt"));
  m.def(
      "pixel_average_precision",
      [](const Array& scores, const py::array_t<bool>& gt, const std::string& flavor) {
        return pixel_average_precision(to_vector(scores), to_mask(gt), parse_ap_flavor(flavor));
      },
      py::arg("scores"), py::arg("gt"), py::arg("flavor") = "ranking");
  m.def(
      "baseline_mask",
      [](const std::string& kind, std::size_t width, std::size_t height) {
        return from_mask(baseline_mask(parse_baseline_kind(kind), width, height));
      },
      py::arg("kind"), py::arg("width"), py::arg("height"));

  m.def(
      "load_feature_map",
      [](const std::filesystem::path& p) { return to_array(load_feature_map(p).tensor()); },
      py::arg("path"));
  m.def(
      "save_feature_map",
      [](const Array& a, const std::filesystem::path& p) {
        save_feature_map(to_feature_map(a), p);
      },
      py::arg("features"), py::arg("path"));
  m.def(
      "extract_touch_instances",
      [](const std::filesystem::path& manifest) {
        const Manifest mf = parse_manifest(manifest);
        py::list out;
        for (const TouchInstance& t : extract_touch_instances(touch_records(mf.records))) {
          out.append(instance_dict(t));
        }
        return out;
      },
      py::arg("manifest"));

  m.def(
      "synth",
      [](const std::map<std::string, py::object>& options) {
        const SyntheticCorpus s = run_synth(run_config(options));
        py::dict d;
        d["manifest"] = s.manifest;
        d["eval_list"] = s.eval_list;
        d["interactive_list"] = s.interactive_list;
        d["tactile_frames"] = s.tactile_frames;
        d["eval_samples"] = s.eval_samples;
        d["interactive_samples"] = s.interactive_samples;
        return d;
      },
      py::arg("options"), "Generate a synthetic corpus; options are config keys.");
  m.def(
      "train",
      [](const std::map<std::string, py::object>& options) {
        const RunConfig config = run_config(options);
        TrainResult r;
        {
          py::gil_scoped_release release;
          r = run_train(config);
        }
        py::list losses;
        for (const LossRecord& l : r.log) losses.append(l.loss);
        py::dict d;
        d["epochs"] = r.epochs_completed;
        d["steps"] = r.global_step;
        d["losses"] = losses;
        return d;
      },
      py::arg("options"));
  m.def(
      "evaluate",
      [](const std::map<std::string, py::object>& options) {
        return report_dict(run_eval(run_config(options)));
      },
      py::arg("options"));
  m.def(
      "evaluate_interactive",
      [](const std::map<std::string, py::object>& options) {
        return report_dict(run_interactive(run_config(options)));
      },
      py::arg("options"));
  m.def(
      "robustness",
      [](const std::map<std::string, py::object>& options) {
        py::dict d;
        for (const auto& [pos, r] : run_robustness(run_config(options))) {
          d[py::str(std::string(to_string(pos)))] = report_dict(r);
        }
        return d;
      },
      py::arg("options"));
  m.def(
      "visual_features",
      [](const std::map<std::string, py::object>& options, const std::filesystem::path& image) {
        const RunConfig c = run_config(options);
        return to_array(visual_features(load_model(c), load_model_input(image)).tensor());
      },
      py::arg("options"), py::arg("image"), "Encoded visual features from a trained model.");
  m.def(
      "tactile_descriptor",
      [](const std::map<std::string, py::object>& options, const std::filesystem::path& tactile) {
        const RunConfig c = run_config(options);
        return tactile_descriptor(load_model(c), load_model_input(tactile)).values;
      },
      py::arg("options"), py::arg("tactile"));
  m.def(
      "gradcheck",
      [](std::uint64_t seed, double h, double tol) {
        const GradCheckProblem p = make_gradcheck_problem(seed);
        const GradCheckReport r = finite_difference_check(p.loss, p.params, h, tol);
        return py::make_tuple(r.max_relative_error, r.passed);
      },
      py::arg("seed") = 0, py::arg("h") = 1e-6, py::arg("tol") = 1e-4);
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv = {"tactloc"};
        for (const std::string& a : args) argv.push_back(a.c_str());
        py::scoped_ostream_redirect out_redirect(std::cout, py::module_::import("sys").attr("stdout"));
        py::scoped_estream_redirect err_redirect(std::cerr, py::module_::import("sys").attr("stderr"));
        return run_cli(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
      },
      py::arg("args"), "Run the command-line tool in-process; returns its exit status.");
}
