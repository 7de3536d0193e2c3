#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wdc/analytic.hpp"
#include "wdc/code.hpp"
#include "wdc/error.hpp"
#include "wdc/experiments.hpp"
#include "wdc/harness.hpp"
#include "wdc/matrix.hpp"
#include "wdc/protocol.hpp"
#include "wdc/selftest.hpp"
#include "wdc/simnet.hpp"

namespace py = pybind11;
using namespace wdc;

namespace {

using Rows = std::vector<std::vector<std::uint32_t>>;
// pybind11 holders cannot be shared_ptr<const T>.
using PyField = std::shared_ptr<Field>;

PyField expose(const FieldPtr& f) { return std::const_pointer_cast<Field>(f); }

Rows to_rows(const Matrix& m) {
  Rows out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r].assign(m.row(r).begin(), m.row(r).end());
  return out;
}

Vector to_vector(const Field& f, const std::vector<std::uint32_t>& v) {
  Vector out;
  out.reserve(v.size());
  for (auto x : v) {
    if (!f.contains(x)) throw Error(ErrorCode::InvalidParameters, "symbol " + std::to_string(x) + " not in " + f.name());
    out.push_back(static_cast<Symbol>(x));
  }
  return out;
}

// Packets are given as a list of lane vectors, one per code position.
std::vector<Packet> to_packets(const BlockCode& code, const Rows& packets) {
  std::vector<Packet> out;
  for (std::size_t i = 0; i < packets.size(); ++i) out.push_back({0, i, to_vector(*code.field(), packets[i])});
  return out;
}

AttackerStrategy parse_attacker(const std::string& name) {
  if (name == "min-weight") return AttackerStrategy::min_weight_forgery();
  if (name == "none") return AttackerStrategy::none();
  if (name.rfind("raw:", 0) == 0) return AttackerStrategy::raw_corruption(std::stoul(name.substr(4)));
  throw Error(ErrorCode::InvalidParameters, "unknown attacker '" + name + "'");
}

py::dict estimate_dict(const EstimateWithCI& e) {
  py::dict d;
  d["estimate"] = e.estimate;
  d["std_error"] = e.std_error;
  d["lower"] = e.lower;
  d["upper"] = e.upper;
  d["successes"] = e.successes;
  d["trials"] = e.trials;
  d["wilson"] = e.wilson;
  return d;
}

py::dict sim_dict(const SimStats& s) {
  py::dict d;
  d["slots"] = s.slots;
  d["alpha"] = s.alpha;
  d["seed"] = s.seed;
  d["s1_transmissions"] = s.s1_transmissions;
  d["s1_to_a"] = s.s1_to_a;
  d["s1_to_a_overheard"] = s.s1_to_a_overheard;
  d["a_transmissions"] = s.a_transmissions;
  d["delivered"] = s.delivered;
  d["delivered_overheard"] = s.delivered_overheard;
  d["comparable"] = s.comparable;
  d["s2_to_b"] = s.s2_to_b;
  d["delivered_flow2"] = s.delivered_flow2;
  d["s1_to_a_rate"] = s.s1_to_a_rate();
  d["observation_rate"] = s.observation_rate();
  d["source_overhear_rate"] = s.source_overhear_rate();
  d["relay_overhear_rate"] = s.relay_overhear_rate();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "WdcError", PyExc_ValueError);

  py::class_<Field, PyField>(m, "Field")
      .def_static("prime", [](std::uint32_t p) { return expose(Field::prime(p)); }, py::arg("p"))
      .def_static(
          "binary", [](unsigned w, std::optional<std::uint32_t> poly) { return expose(Field::binary(w, poly)); },
          py::arg("width"), py::arg("polynomial") = py::none())
      .def_static("of_order", [](std::uint32_t q) { return expose(Field::of_order(q)); }, py::arg("order"))
      .def_property_readonly("order", &Field::order)
      .def_property_readonly("characteristic", &Field::characteristic)
      .def_property_readonly("width", &Field::width)
      .def_property_readonly("polynomial", &Field::polynomial)
      .def_property_readonly("name", &Field::name)
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("mul", &Field::mul)
      .def("inv", &Field::inv)
      .def("div", &Field::div)
      .def("pow", &Field::pow)
      .def("__repr__", &Field::name);

  m.def("rank", [](PyField f, const Rows& rows) { return rank(Matrix::from_rows(std::move(f), rows)); });
  m.def("null_space", [](PyField f, const Rows& rows) {
    Rows out;
    for (const auto& v : null_space(Matrix::from_rows(std::move(f), rows))) out.emplace_back(v.begin(), v.end());
    return out;
  });

  py::class_<BlockCode>(m, "BlockCode")
      .def_static(
          "reed_solomon", [](std::size_t n, std::size_t k, PyField f) { return BlockCode::reed_solomon(n, k, f); },
          py::arg("n"), py::arg("k"), py::arg("field"))
      .def_static("hamming", &BlockCode::hamming, py::arg("m"))
      .def_static("from_parity_check",
                  [](PyField f, const Rows& h) { return BlockCode::from_parity_check(Matrix::from_rows(std::move(f), h)); },
                  py::arg("field"), py::arg("h"))
      .def_property_readonly("n", &BlockCode::n)
      .def_property_readonly("k", &BlockCode::k)
      .def_property_readonly("field", [](const BlockCode& c) { return expose(c.field()); })
      .def_property_readonly("name", &BlockCode::name)
      .def_property_readonly("generator", [](const BlockCode& c) { return to_rows(c.generator()); })
      .def_property_readonly("parity_check", [](const BlockCode& c) { return to_rows(c.parity_check()); })
      .def("encode", [](const BlockCode& c, const std::vector<std::uint32_t>& msg) {
        const auto w = c.encode_lane(to_vector(*c.field(), msg));
        return std::vector<std::uint32_t>(w.begin(), w.end());
      })
      .def("syndrome", [](const BlockCode& c, const std::vector<std::uint32_t>& word) {
        const auto s = c.syndrome(to_vector(*c.field(), word));
        return std::vector<std::uint32_t>(s.begin(), s.end());
      })
      .def("is_codeword", [](const BlockCode& c, const std::vector<std::uint32_t>& word) {
        return c.is_codeword(to_vector(*c.field(), word));
      })
      .def("__repr__", &BlockCode::name);

  m.def(
      "encode_packets",
      [](const BlockCode& c, const Rows& message) {
        Rows out;
        for (const auto& p : encode(c, to_packets(c, message))) out.emplace_back(p.symbols.begin(), p.symbols.end());
        return out;
      },
      "Lane-wise encoding of k packets into n.");
  m.def(
      "detect", [](const BlockCode& c, const Rows& packets) { return detect(c, to_packets(c, packets)) == Verdict::Tampered; },
      "True when some lane has a nonzero syndrome.");
  m.def("min_distance", &min_distance);
  m.def("min_distance_exhaustive", &min_distance_exhaustive);
  m.def("weight_distribution", &weight_distribution);

  auto an = m.def_submodule("analytic");
  an.def("throughput_linear_watchdog", &analytic::throughput_linear_watchdog, py::arg("l_sym"), py::arg("m_check"));
  an.def(
      "linear_miss_bounds",
      [](std::uint32_t fq, std::size_t l, std::size_t mc) {
        const auto b = analytic::linear_miss_bounds(fq, l, mc);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("fq"), py::arg("l_sym"), py::arg("m_check"));
  an.def("min_check_symbols", py::overload_cast<double, std::uint32_t>(&analytic::min_check_symbols), py::arg("theta"),
         py::arg("fq") = 2);
  an.def("p_miss_mds", &analytic::p_miss_mds, py::arg("n"), py::arg("k"), py::arg("p_obs"));
  an.def("p_miss_bound", &analytic::p_miss_bound, py::arg("n"), py::arg("k"), py::arg("p_obs"));
  an.def("select_k", &analytic::select_k, py::arg("n"), py::arg("p_obs"), py::arg("beta"));
  an.def("coding_rate", &analytic::coding_rate, py::arg("n"), py::arg("p_obs"), py::arg("beta"));
  an.def("aloha_throughput", &analytic::aloha_throughput, py::arg("alpha"));
  an.def("aloha_obs_prob", &analytic::aloha_obs_prob, py::arg("alpha"));
  an.def("effective_throughput", &analytic::effective_throughput, py::arg("alpha"), py::arg("n"), py::arg("beta"));

  m.def(
      "estimate_p_miss",
      [](const BlockCode& c, double p_obs, std::uint64_t trials, std::uint64_t seed, const std::string& attacker,
         std::size_t lanes, unsigned jobs) {
        const auto strategy = parse_attacker(attacker);
        const auto observation = ObservationModel::bernoulli(p_obs);
        py::gil_scoped_release release;
        const auto e = estimate_p_miss(c, strategy, observation, {lanes, trials, seed, 0, jobs});
        py::gil_scoped_acquire acquire;
        return estimate_dict(e);
      },
      py::arg("code"), py::arg("p_obs"), py::arg("trials"), py::arg("seed") = 1, py::arg("attacker") = "min-weight",
      py::arg("lanes") = 1, py::arg("jobs") = 1);

  m.def(
      "run_sim",
      [](double alpha, std::uint64_t slots, std::uint64_t seed, const std::string& topology,
         std::optional<double> flow2_alpha, std::uint64_t until_delivered) {
        if (topology != "two-flows" && topology != "single-flow") {
          throw Error(ErrorCode::InvalidParameters, "unknown topology '" + topology + "'");
        }
        SimOptions options;
        options.flow2_alpha = flow2_alpha;
        options.until_delivered = until_delivered;
        const auto topo = topology == "two-flows" ? Topology::two_flows() : Topology::single_flow();
        return sim_dict(run_sim(topo, alpha, slots, seed, options));
      },
      py::arg("alpha"), py::arg("slots"), py::arg("seed") = 1, py::arg("topology") = "two-flows",
      py::arg("flow2_alpha") = py::none(), py::arg("until_delivered") = 0);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("name", &ExperimentConfig::name)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("jobs", &ExperimentConfig::jobs)
      .def_readwrite("lanes", &ExperimentConfig::lanes)
      .def_readwrite("n_values", &ExperimentConfig::n_values)
      .def_readwrite("beta_values", &ExperimentConfig::beta_values)
      .def_readwrite("p_obs_values", &ExperimentConfig::p_obs_values)
      .def_readwrite("alpha_values", &ExperimentConfig::alpha_values)
      .def_readwrite("m_values", &ExperimentConfig::m_values)
      .def_readwrite("k_mode", &ExperimentConfig::k_mode)
      .def_readwrite("k_values", &ExperimentConfig::k_values)
      .def_readwrite("attacker", &ExperimentConfig::attacker)
      .def_readwrite("min_delivered", &ExperimentConfig::min_delivered)
      .def_readwrite("fq", &ExperimentConfig::fq)
      .def_readwrite("l_sym", &ExperimentConfig::l_sym)
      .def_readwrite("m_check_values", &ExperimentConfig::m_check_values)
      .def_readwrite("matrices", &ExperimentConfig::matrices);
  m.def("default_config", &default_config, py::arg("name"));
  m.def("experiment_names", &experiment_names);
  m.def(
      "_run_experiment",
      [](const ExperimentConfig& c) {
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        return py::make_tuple(to_csv(r.table), r.summary.dump());
      },
      py::arg("config"));

  m.def("selftest", [](bool inject_fault) {
    SelftestOptions options;
    options.corrupt_generator = inject_fault;
    py::list out;
    for (const auto& c : run_selftest(options)) {
      py::dict d;
      d["name"] = c.name;
      d["pass"] = c.pass;
      d["detail"] = c.detail;
      d["seconds"] = c.seconds;
      out.append(d);
    }
    return out;
  }, py::arg("inject_fault") = false);
}
