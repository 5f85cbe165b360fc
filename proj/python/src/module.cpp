#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "regpart/campaign.hpp"
#include "regpart/euler_pairs.hpp"
#include "regpart/quadforms.hpp"
#include "regpart/radu.hpp"
#include "regpart/series.hpp"
#include "regpart/series_cache.hpp"

namespace py = pybind11;
using namespace regpart;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::int_ to_py(const BigInt& v) {
  const std::string s = v.str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

EtaExponents eta_from_dict(const std::map<u64, int>& r) { return EtaExponents::from_map(r); }

py::list coefficients(const CoefficientSeries& s) {
  py::list out;
  if (s.ring().is_modular()) {
    for (std::size_t i = 0; i < s.size(); ++i) out.append(py::int_(s.residue(i)));
  } else {
    for (const auto& v : s.values()) out.append(to_py(v));
  }
  return out;
}

py::dict record_dict(const PrimeClassRecord& r) {
  py::dict d;
  d["p"] = r.p;
  d["in_P"] = r.in_P;
  d["residue"] = r.residue;
  if (r.in_P) {
    d["j"] = r.j;
    d["witness"] = py::make_tuple(r.x1, r.y1);
  }
  return d;
}

Partition partition_of(std::vector<u64> parts) { return Partition(std::move(parts)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Parity of 3-regular partitions: series, quadratic forms, finite congruence checks";

  py::class_<CoefficientRing>(m, "Ring")
      .def_static("gf2", &CoefficientRing::gf2)
      .def_static("mod_pow2", &CoefficientRing::mod_pow2, py::arg("k"))
      .def_static("exact", &CoefficientRing::exact)
      .def_property_readonly("bits", &CoefficientRing::bits)
      .def_property_readonly("name", &CoefficientRing::name)
      .def("__eq__", [](const CoefficientRing& a, const CoefficientRing& b) { return a == b; })
      .def("__repr__", [](const CoefficientRing& r) { return "Ring(" + r.name() + ")"; });

  py::class_<ResidueSet>(m, "ResidueSet")
      .def(py::init<u64, std::vector<u64>>(), py::arg("modulus"), py::arg("residues"))
      .def_static("all", &ResidueSet::all)
      .def_static("odd", &ResidueSet::odd)
      .def_static("excluding_classes", &ResidueSet::excluding_classes)
      .def("without_multiples_of", &ResidueSet::without_multiples_of)
      .def("minus", &ResidueSet::minus)
      .def("scaled", &ResidueSet::scaled)
      .def("contains", &ResidueSet::contains)
      .def("__contains__", &ResidueSet::contains)
      .def("elements_up_to", &ResidueSet::elements_up_to)
      .def_property_readonly("period", &ResidueSet::period)
      .def("same_set", &ResidueSet::same_set)
      .def("__repr__", &ResidueSet::describe);

  py::class_<CoefficientSeries>(m, "Series")
      .def_property_readonly("ring", &CoefficientSeries::ring)
      .def("__len__", &CoefficientSeries::size)
      .def("parity", &CoefficientSeries::parity)
      .def("residue", &CoefficientSeries::residue)
      .def("__getitem__", [](const CoefficientSeries& s, std::size_t n) {
        if (n >= s.size()) throw py::index_error();
        return to_py(s.value(n));
      })
      .def("coefficients", &coefficients)
      .def("reduced", &CoefficientSeries::reduced)
      .def("truncated", &CoefficientSeries::truncated)
      .def("__eq__", [](const CoefficientSeries& a, const CoefficientSeries& b) { return a == b; });

  m.def(
      "eta_quotient_series",
      [](const std::map<u64, int>& r, std::size_t length, const CoefficientRing& ring) {
        return eta_quotient_series(eta_from_dict(r), length, ring);
      },
      py::arg("exponents"), py::arg("length"), py::arg("ring") = CoefficientRing::exact(),
      "prod (q^d; q^d)^{r_d} truncated at `length`; exponents map divisor -> r_d");
  m.def(
      "partition_series",
      [](const ResidueSet& parts, std::size_t length, const CoefficientRing& ring, unsigned bound, bool signed_) {
        return partition_series(parts, PartitionMode{bound, signed_}, length, ring);
      },
      py::arg("parts"), py::arg("length"), py::arg("ring") = CoefficientRing::exact(), py::arg("bound") = 0,
      py::arg("signed_by_length") = false);
  m.def(
      "length_parity_pair",
      [](const ResidueSet& parts, std::size_t length, const CoefficientRing& ring, unsigned bound) {
        auto pair = length_parity_pair(parts, bound, length, ring);
        return py::make_tuple(std::move(pair.even), std::move(pair.odd));
      },
      py::arg("parts"), py::arg("length"), py::arg("ring") = CoefficientRing::mod_pow2(2), py::arg("bound") = 0);
  m.def(
      "b3_family",
      [](std::size_t length) {
        B3Family f = b3_family(length);
        py::dict d;
        d["b3"] = std::move(f.b3);
        d["b_keith"] = std::move(f.b_keith);
        d["b3_even"] = std::move(f.b3_even);
        d["b3_odd"] = std::move(f.b3_odd);
        d["a_series"] = f.a_series;
        d["s3_check_passed"] = f.s3_check.passed();
        d["s3_checked"] = f.s3_check.checked;
        return d;
      },
      py::arg("length"));
  m.def("series_parity_at", [](const CoefficientSeries& s, const std::vector<u64>& idx) {
    return series_parity_at(s, idx);
  });
  m.def("save_series", &save_series, py::arg("path"), py::arg("series"));
  m.def("load_series", &load_series, py::arg("path"));
  py::register_exception<CacheError>(m, "CacheError", PyExc_IOError);

  m.def("jacobi_symbol", &jacobi_symbol, py::arg("a"), py::arg("n"));
  m.def(
      "reduced_forms",
      [](i64 D) {
        std::vector<std::tuple<i64, i64, i64>> out;
        for (const auto& f : reduced_forms(D).forms) out.emplace_back(f.a, f.b, f.c);
        return out;
      },
      py::arg("D"));
  m.def("class_number", [](i64 D) { return reduced_forms(D).class_number(); }, py::arg("D"));
  m.def(
      "rep_count",
      [](i64 a, i64 b, i64 c, u64 w) {
        const RepCount rc = rep_count(QuadForm{a, b, c}, w);
        return py::make_tuple(rc.total, rc.primitive);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("w"), "(total, primitive) representations of w");
  m.def("classify_prime", [](u64 p) { return record_dict(classify_prime(p)); }, py::arg("p"));
  m.def(
      "conjecture_n2_formula",
      [](u64 m_, const std::string& interp) {
        const auto b = interp == "c" ? BInterpretation::ExponentMod2 : BInterpretation::ExponentMod3;
        const N2Prediction pr = conjecture_n2_formula(m_, b);
        return pr.value;
      },
      py::arg("m"), py::arg("interpretation") = "a");
  m.def(
      "inverse_data",
      [](u64 p) {
        const InverseData d = inverse_data(p);
        py::dict out;
        out["p"] = d.p;
        out["neg_inv24_mod_p"] = d.neg_inv24_mod_p;
        out["inv24_mod_p2"] = d.inv24_mod_p2;
        out["neg_inv24_mod_p2"] = d.neg_inv24_mod_p2;
        return out;
      },
      py::arg("p"));

  m.def(
      "cmd_pclass", [](u64 limit, bool list) { return to_py(cmd_pclass(limit, {list}).to_json(false)); },
      py::arg("limit"), py::arg("list") = false);
  m.def(
      "cmd_verify",
      [](const std::string& theorem, u64 p, std::optional<u64> n_max, bool long_run) {
        const auto th = parse_theorem(theorem);
        if (!th) throw py::value_error("unknown theorem " + theorem);
        CampaignReport rep;
        {
          py::gil_scoped_release release;
          rep = cmd_verify(*th, p, {n_max, long_run});
        }
        return to_py(rep.to_json(false));
      },
      py::arg("theorem"), py::arg("p"), py::arg("n_max") = py::none(), py::arg("long_run") = false);
  m.def(
      "cmd_conjecture_n2",
      [](u64 limit, const std::string& interp) {
        std::vector<BInterpretation> which;
        if (interp != "c") which.push_back(BInterpretation::ExponentMod3);
        if (interp != "a") which.push_back(BInterpretation::ExponentMod2);
        return to_py(cmd_conjecture_n2(limit, which).to_json(false));
      },
      py::arg("limit"), py::arg("interpretation") = "all");

  m.def(
      "p_set",
      [](u64 m_, const std::map<u64, int>& r, u64 t) { return p_set(m_, eta_from_dict(r), t); },
      py::arg("m"), py::arg("exponents"), py::arg("t"));
  m.def(
      "b_slopes",
      [](u64 p) {
        const RaduInstance inst = b_instance(p, inverse_data(p).neg_inv24_mod_p);
        std::vector<std::string> out;
        for (const auto& g : coset_data(inst.N).reps) out.push_back(to_string(slopes(inst, g).p_mr));
        return out;
      },
      py::arg("p"), "p_{m,r} at each coset representative, as reduced fractions");
  m.def(
      "radu_row",
      [](u64 p, bool series_checks) {
        TableOptions opts;
        opts.series_checks = series_checks;
        opts.long_rows = true;
        return to_py(compute_table_row(p, opts).to_json());
      },
      py::arg("p"), py::arg("series_checks") = false);
  m.def("radu_table", [](bool series_checks) {
    TableOptions opts;
    opts.series_checks = series_checks;
    py::list rows;
    for (const auto& r : reproduce_table(opts)) rows.append(to_py(r.to_json()));
    return rows;
  }, py::arg("series_checks") = false);

  m.def(
      "euler_pair_check",
      [](const ResidueSet& s1, const ResidueSet& s2, unsigned k, u64 limit) {
        return euler_pair_check(s1, s2, k, limit).is_pair();
      },
      py::arg("s1"), py::arg("s2"), py::arg("k"), py::arg("limit"));
  m.def(
      "glaisher_forward",
      [](const ResidueSet& s1, unsigned k, std::vector<u64> parts) {
        return GlaisherMap(s1, k).forward(partition_of(std::move(parts))).parts;
      },
      py::arg("s1"), py::arg("k"), py::arg("parts"));
  m.def(
      "glaisher_inverse",
      [](const ResidueSet& s1, unsigned k, std::vector<u64> parts) {
        return GlaisherMap(s1, k).inverse(partition_of(std::move(parts))).parts;
      },
      py::arg("s1"), py::arg("k"), py::arg("parts"));
  m.def(
      "gupta_involution",
      [](std::vector<u64> parts, const ResidueSet& s1) {
        return gupta_involution(partition_of(std::move(parts)), s1).parts;
      },
      py::arg("parts"), py::arg("s1"));
  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);
}
