// pybind11 bindings; exact integers cross the boundary as Python ints (via
// decimal strings) and rationals as fractions.Fraction
#include "bqf/classgroup.hpp"
#include "bqf/enumeration.hpp"
#include "bqf/local_arith.hpp"
#include "bqf/reduction.hpp"
#include "bqf/selmer.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bqf;

namespace {

Int to_int(const py::handle& h) { return Int::parse(py::str(h).cast<std::string>()); }
py::object from_int(const Int& x) { return py::module_::import("builtins").attr("int")(x.str()); }
py::object from_rat(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(from_int(r.num()), from_int(r.den()));
}

QuarticForm to_form(const py::sequence& s) {
  if (py::len(s) != 5) throw py::value_error("a quartic form has five coefficients");
  return {to_int(s[0]), to_int(s[1]), to_int(s[2]), to_int(s[3]), to_int(s[4])};
}
py::tuple from_form(const QuarticForm& f) {
  return py::make_tuple(from_int(f.a), from_int(f.b), from_int(f.c), from_int(f.d), from_int(f.e));
}
py::tuple from_pair(const InvariantPair& p) { return py::make_tuple(from_int(p.I), from_int(p.J)); }

DiscSign to_sign(const std::string& s) {
  if (s == "+") return DiscSign::Positive;
  if (s == "-") return DiscSign::Negative;
  throw py::value_error("sign must be '+' or '-'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "integral binary quartic forms: invariants, classes, densities, Selmer and class-group statistics";

  m.def("invariants", [](const py::sequence& f) { return from_pair(quartic_invariants(to_form(f))); });
  m.def("discriminant", [](const py::sequence& f) { return from_int(quartic_disc(to_form(f))); });
  m.def("root_type", [](const py::sequence& f) { return std::string(root_type_name(root_type(to_form(f)))); });
  m.def("is_eligible", [](const py::handle& I, const py::handle& J) { return is_eligible({to_int(I), to_int(J)}); });
  m.def("canonical_form", [](const py::sequence& f) {
    auto c = canonical_form(to_form(f), true);
    return py::make_tuple(from_form(c.form), c.stabilizer);
  });
  m.def("equivalent", [](const py::sequence& f, const py::sequence& g) {
    return equivalent_quartics(to_form(f), to_form(g)).has_value();
  });

  m.def("eligible_pairs", [](const py::handle& X, const std::string& sign) {
    py::list out;
    for (const auto& p : eligible_pairs(to_int(X), to_sign(sign))) out.append(from_pair(p));
    return out;
  });
  m.def("eligible_pair_count", [](const py::handle& X, const std::string& sign) {
    return eligible_pair_count(to_int(X), to_sign(sign));
  });
  m.def("eligible_residue_cells", &eligible_residue_cells);

  m.def("classes_with_invariants", [](const py::handle& I, const py::handle& J) {
    py::list out;
    for (const auto& q : classes_with_invariants({to_int(I), to_int(J)})) {
      py::dict d;
      d["form"] = from_form(q.form);
      d["type"] = std::string(root_type_name(q.type));
      d["reducible"] = q.reducible;
      d["stabilizer"] = q.stabilizer;
      out.append(d);
    }
    return out;
  });
  m.def(
      "count_classes",
      [](const py::handle& X, std::optional<std::string> type, bool strongly_maximal, int threads) {
        CountOptions opt;
        if (type) {
          opt.root_type = parse_root_type(*type);
          if (!opt.root_type) throw py::value_error("root type must be 0, 1, 2+ or 2-");
        }
        opt.filter = strongly_maximal ? ClassFilter::StronglyMaximal : ClassFilter::None;
        opt.threads = threads;
        auto c = count_quartic_classes(to_int(X), opt);
        py::dict d;
        py::dict by;
        for (int k = 0; k < 4; ++k) by[root_type_name(static_cast<RootType>(k))] = c.by_type[k];
        d["by_type"] = by;
        d["total"] = c.total;
        d["weighted_total"] = from_rat(c.weighted_total);
        d["reducible"] = c.reducible;
        d["fibers"] = c.fibers;
        return d;
      },
      py::arg("X"), py::arg("root_type") = py::none(), py::arg("strongly_maximal") = false, py::arg("threads") = 1);

  m.def("density", [](const std::string& family, long long p, std::optional<std::string> symbol, bool maximal) {
    auto fam = parse_family(family);
    if (!fam) throw py::value_error("unknown family");
    std::optional<int> idx;
    if (symbol) {
      if (*fam == Family::MonicCubic || *fam == Family::GeneralCubic) {
        auto s = parse_cubic_split(*symbol);
        if (!s) throw py::value_error("unknown cubic splitting symbol");
        idx = static_cast<int>(*s);
      } else {
        auto s = parse_quartic_split(*symbol);
        if (!s) throw py::value_error("unknown quartic splitting symbol");
        idx = static_cast<int>(*s);
      }
    }
    return from_rat(density(*fam, p, idx, maximal));
  }, py::arg("family"), py::arg("p"), py::arg("symbol") = py::none(), py::arg("maximal") = false);
  m.def("formula_tables_hold", [](long long p) { return density_formula_table(p).all_hold(); });

  m.def("qp_soluble", [](const py::sequence& f, long long p) { return qp_soluble(to_form(f), p); });
  m.def("locally_soluble", [](const py::sequence& f) { return locally_soluble(to_form(f)).soluble; });
  m.def("minimize", [](const py::sequence& f) { return from_form(minimize(to_form(f))); });
  m.def("selmer_size", [](const py::handle& A, const py::handle& B) {
    auto r = selmer_size(EllipticCurve(to_int(A), to_int(B)));
    py::dict d;
    d["size"] = r.size;
    d["power_of_two"] = r.power_of_two;
    d["identity_found"] = r.identity_found;
    py::list reps;
    for (const auto& c : r.classes) reps.append(from_form(c.representative));
    d["representatives"] = reps;
    return d;
  });
  m.def(
      "selmer_average",
      [](const py::handle& X, const std::string& family, int threads) {
        auto st = selmer_average(CurveFamily::parse(family), to_int(X), threads);
        py::dict d;
        d["curves"] = st.curves;
        d["total_size"] = st.total_size;
        d["mean"] = st.mean();
        d["not_power_of_two"] = st.not_power_of_two;
        d["excluded_nonrigid"] = st.excluded_nonrigid;
        d["excluded_torsion"] = st.excluded_torsion;
        return d;
      },
      py::arg("X"), py::arg("family") = "all", py::arg("threads") = 1);
  m.def("mass_ratio_product", [](long long pmax) { return from_rat(mass_ratio_product(pmax)); });

  m.def("cl2_counts", [](const py::handle& I, const py::handle& J) {
    auto c = cl2_counts({to_int(I), to_int(J)});
    return py::make_tuple(c.cl2, c.cl2_plus);
  });
  m.def(
      "classgroup_average",
      [](const py::handle& X, const std::string& signature, bool narrow, int threads) {
        auto sig = parse_signature(signature);
        if (!sig) throw py::value_error("signature must be totally-real or complex");
        auto st = mcc_averages(to_int(X), *sig, narrow, {}, threads);
        py::dict d;
        d["fields"] = st.fields;
        d["average"] = st.average();
        d["target"] = st.target();
        d["power_of_two_violations"] = st.power_of_two_violations;
        return d;
      },
      py::arg("X"), py::arg("signature") = "totally-real", py::arg("narrow") = false, py::arg("threads") = 1);
  m.def("n_monogenized_count", [](const py::handle& X, double delta) {
    auto r = n_monogenized_cubic_count(to_int(X), delta);
    return py::make_tuple(r.positive, r.negative);
  });
}
