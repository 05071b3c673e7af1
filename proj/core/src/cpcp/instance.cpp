#include "gippa/cpcp/instance.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "gippa/numkit/rng.hpp"

namespace gippa::cpcp {

namespace nk = numkit;

std::size_t degrees_of_freedom(std::size_t m, std::size_t n, std::size_t r, std::size_t nnz) {
  return (m + n - r) * r + nnz;
}

CpcpInstance generate_instance(const InstanceSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw std::invalid_argument("generate_instance: empty image");
  if (spec.r > std::min(spec.m, spec.n)) {
    throw std::invalid_argument("generate_instance: rank exceeds min(m, n)");
  }
  if (spec.nnz > spec.m * spec.n) {
    throw std::invalid_argument("generate_instance: nnz exceeds m*n");
  }
  const nk::SeededRng root(spec.seed);
  nk::SeededRng rng_low = root.split("low_rank");
  nk::SeededRng rng_support = root.split("sparse_support");
  nk::SeededRng rng_values = root.split("sparse_values");
  nk::SeededRng rng_meas = root.split("measurement");

  // Validates q for the transform kind before any heavy work.
  MeasurementOp meas = nk::make_measurement_op(spec.kind, spec.m, spec.n, spec.q, rng_meas);

  const DenseMatrix n1 = nk::rng_normal(rng_low, spec.m, spec.r);
  const DenseMatrix n2 = nk::rng_normal(rng_low, spec.r, spec.n);
  DenseMatrix l0 = spec.r == 0 ? DenseMatrix(spec.m, spec.n) : nk::multiply(n1, n2);

  std::vector<std::size_t> support =
      nk::sample_without_replacement(rng_support, spec.m * spec.n, spec.nnz);
  const Vector values = spec.nnz == 0 ? Vector{} : nk::rng_uniform(rng_values, -10.0, 10.0, spec.nnz);
  DenseMatrix s0(spec.m, spec.n);
  for (std::size_t i = 0; i < support.size(); ++i) s0.data()[support[i]] = values[i];

  Vector b = meas.apply(l0 + s0);
  const std::size_t dof = degrees_of_freedom(spec.m, spec.n, spec.r, spec.nnz);
  return CpcpInstance{spec,
                      std::move(l0),
                      std::move(s0),
                      std::move(support),
                      std::move(meas),
                      std::move(b),
                      1.0 / std::sqrt(static_cast<double>(spec.m)),
                      dof};
}

std::string instance_to_json(const CpcpInstance& inst) {
  nlohmann::json j;
  j["format"] = "gippa-cpcp-instance";
  j["version"] = 1;
  j["rng"] = std::string(nk::SeededRng::kAlgorithmId);
  j["seed"] = inst.spec.seed;
  j["m"] = inst.spec.m;
  j["n"] = inst.spec.n;
  j["r"] = inst.spec.r;
  j["nnz"] = inst.spec.nnz;
  j["transform"] = std::string(nk::to_string(inst.spec.kind));
  j["q"] = inst.spec.q;
  j["support"] = inst.support;
  const auto sel = inst.meas.selected_indices();
  j["selected"] = std::vector<std::size_t>(sel.begin(), sel.end());
  return j.dump(1);
}

CpcpInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance_from_json: ") + e.what());
  }
  if (j.value("format", "") != "gippa-cpcp-instance") {
    throw std::invalid_argument("instance_from_json: not an instance dump");
  }
  if (j.value("rng", "") != nk::SeededRng::kAlgorithmId) {
    throw std::invalid_argument("instance_from_json: generated with a different RNG");
  }
  InstanceSpec spec;
  try {
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.m = j.at("m").get<std::size_t>();
    spec.n = j.at("n").get<std::size_t>();
    spec.r = j.at("r").get<std::size_t>();
    spec.nnz = j.at("nnz").get<std::size_t>();
    spec.kind = nk::parse_transform_kind(j.at("transform").get<std::string>());
    spec.q = j.at("q").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance_from_json: ") + e.what());
  }
  CpcpInstance inst = generate_instance(spec);
  if (j.contains("support") &&
      j["support"].get<std::vector<std::size_t>>() != inst.support) {
    throw std::runtime_error("instance_from_json: regenerated support differs from dump");
  }
  if (j.contains("selected")) {
    const auto sel = inst.meas.selected_indices();
    if (j["selected"].get<std::vector<std::size_t>>() !=
        std::vector<std::size_t>(sel.begin(), sel.end())) {
      throw std::runtime_error("instance_from_json: regenerated measurement indices differ");
    }
  }
  return inst;
}

}  // namespace gippa::cpcp
