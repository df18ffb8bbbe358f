#include "altfix/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace altfix {

namespace {

using nlohmann::json;

constexpr double kLoadTol = 1e-9;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("scenario field '" + path + "': " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

const json* optional_member(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

Rational parse_rational_value(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(BigInt(j.get<std::uint64_t>()));
  // A JSON float is taken at its exact (dyadic) double value.
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  fail(path, "expected a rational (\"p/q\" string or number)");
}

double parse_number(const json& j, const std::string& path) {
  return to_double(parse_rational_value(j, path));
}

BigInt parse_big_nonneg(const json& j, const std::string& path) {
  const Rational r = parse_rational_value(j, path);
  if (denominator(r) != 1 || r < 0) fail(path, "expected a nonneg integer");
  return numerator(r);
}

std::vector<double> parse_number_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Space parse_space(const json& j, const std::string& path) {
  if (const json* e = optional_member(j, "euclidean"))
    return euclidean_space(e->get<int>());
  if (const json* s = optional_member(j, "spider"))
    return spider_space(s->get<int>());
  fail(path, "expected {\"euclidean\": dim} or {\"spider\": legs}");
}

Point parse_point(const json& j, const std::string& path) {
  if (const json* e = optional_member(j, "euclidean"))
    return euclidean_point(parse_number_array(*e, path + ".euclidean"));
  if (const json* s = optional_member(j, "spider")) {
    const std::string sp = path + ".spider";
    return spider_point(member(*s, sp, "leg").get<int>(),
                        parse_number(member(*s, sp, "radius"), sp + ".radius"));
  }
  fail(path, "expected {\"euclidean\": [...]} or {\"spider\": {...}}");
}

Region parse_region(const json& j, const std::string& path) {
  if (const json* b = optional_member(j, "box")) {
    const std::string bp = path + ".box";
    return BoxRegion{parse_number_array(member(*b, bp, "lo"), bp + ".lo"),
                     parse_number_array(member(*b, bp, "hi"), bp + ".hi")};
  }
  if (const json* b = optional_member(j, "ball")) {
    const std::string bp = path + ".ball";
    return BallRegion{
        parse_point(member(*b, bp, "center"), bp + ".center"),
        parse_number(member(*b, bp, "radius"), bp + ".radius")};
  }
  if (const json* s = optional_member(j, "leg_interval")) {
    const std::string sp = path + ".leg_interval";
    return LegIntervalRegion{
        member(*s, sp, "leg").get<int>(),
        parse_number(member(*s, sp, "lo"), sp + ".lo"),
        parse_number(member(*s, sp, "hi"), sp + ".hi")};
  }
  fail(path, "expected box, ball or leg_interval");
}

OperatorSpec parse_operator(const json& j, const std::string& path) {
  if (const json* p = optional_member(j, "projection"))
    return projection_op(parse_region(*p, path + ".projection"));
  if (const json* p = optional_member(j, "prox_sqdist")) {
    const std::string pp = path + ".prox_sqdist";
    return prox_sqdist_op(
        parse_point(member(*p, pp, "anchor"), pp + ".anchor"),
        parse_number(member(*p, pp, "lambda"), pp + ".lambda"));
  }
  if (const json* p = optional_member(j, "soft_threshold")) {
    const std::string pp = path + ".soft_threshold";
    return soft_threshold_op(
        parse_number(member(*p, pp, "lambda"), pp + ".lambda"));
  }
  if (const json* p = optional_member(j, "composition")) {
    const std::string pp = path + ".composition";
    return composition_op(parse_operator(member(*p, pp, "first"), pp + ".first"),
                          parse_operator(member(*p, pp, "second"), pp + ".second"));
  }
  fail(path, "expected projection, prox_sqdist, soft_threshold or composition");
}

SequenceSpec parse_sequence(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "zero") return zero_seq();
  if (const json* g = optional_member(j, "geometric")) {
    const std::string gp = path + ".geometric";
    return geometric_seq(
        parse_rational_value(member(*g, gp, "c"), gp + ".c"),
        parse_rational_value(member(*g, gp, "q"), gp + ".q"));
  }
  if (const json* l = optional_member(j, "list")) {
    const std::string lp = path + ".list";
    if (!l->is_array()) fail(lp, "expected an array of rationals");
    std::vector<Rational> values;
    values.reserve(l->size());
    for (std::size_t i = 0; i < l->size(); ++i)
      values.push_back(
          parse_rational_value((*l)[i], lp + "[" + std::to_string(i) + "]"));
    return finite_list_seq(std::move(values));
  }
  fail(path, "expected \"zero\", {\"geometric\": ...} or {\"list\": [...]}");
}

FunctionSpec parse_function(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "abs") return AbsFn{};
  if (const json* r = optional_member(j, "indicator"))
    return IndicatorFn{parse_region(*r, path + ".indicator")};
  if (const json* a = optional_member(j, "half_sq_dist"))
    return HalfSqDistFn{parse_point(*a, path + ".half_sq_dist")};
  fail(path, "expected {\"indicator\": region}, {\"half_sq_dist\": point} or \"abs\"");
}

Counterfunction parse_counterfunction(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "identity") return identity_cf();
  if (const json* c = optional_member(j, "constant"))
    return constant_cf(parse_big_nonneg(*c, path + ".constant"));
  if (const json* a = optional_member(j, "affine")) {
    const std::string ap = path + ".affine";
    return affine_cf(parse_big_nonneg(member(*a, ap, "a"), ap + ".a"),
                     parse_big_nonneg(member(*a, ap, "b"), ap + ".b"));
  }
  if (const json* t = optional_member(j, "table")) {
    const std::string tp = path + ".table";
    const json& vals = member(*t, tp, "values");
    if (!vals.is_array()) fail(tp + ".values", "expected an array");
    std::vector<BigInt> values;
    values.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      values.push_back(
          parse_big_nonneg(vals[i], tp + ".values[" + std::to_string(i) + "]"));
    return table_cf(std::move(values),
                    parse_big_nonneg(member(*t, tp, "default"), tp + ".default"));
  }
  fail(path, "expected \"identity\", constant, affine or table");
}

void check_objective_matches_operators(const Scenario& sc) {
  // The x-side function pairs with T2 and the y-side with T1: a fixed point
  // x* of T2 T1 solves the coupled problem with y* = T1 x*.
  const OperatorSpec res_f = resolvent_of(sc.objective->f, sc.objective->lambda);
  const OperatorSpec res_g = resolvent_of(sc.objective->g, sc.objective->lambda);
  std::vector<Point> probes{sc.x0};
  if (sc.u) probes.push_back(*sc.u);
  for (const Point& p : probes) {
    if (distance(sc.space, apply(sc.space, res_f, p), apply(sc.space, sc.t2, p)) >
            kLoadTol ||
        distance(sc.space, apply(sc.space, res_g, p), apply(sc.space, sc.t1, p)) >
            kLoadTol)
      throw std::invalid_argument(
          "check 'objective-consistency' failed: the objective's resolvents "
          "disagree with T1/T2 at a probe point");
  }
}

}  // namespace

namespace {

Scenario parse_scenario_impl(const json& j) {
  Scenario sc;
  const json& id = member(j, "scenario", "id");
  if (!id.is_string() || id.get<std::string>().empty())
    fail("id", "expected a nonempty string");
  sc.id = id.get<std::string>();
  sc.space = parse_space(member(j, "scenario", "space"), "space");
  sc.t1 = parse_operator(member(j, "scenario", "t1"), "t1");
  sc.t2 = parse_operator(member(j, "scenario", "t2"), "t2");
  sc.x0 = parse_point(member(j, "scenario", "x0"), "x0");
  if (const json* u = optional_member(j, "u")) sc.u = parse_point(*u, "u");

  if (const json* conv = optional_member(j, "b_convention")) {
    const std::string tag = conv->get<std::string>();
    if (tag == "twice_distance")
      sc.b_convention = BConvention::TwiceDistance;
    else if (tag == "distance")
      sc.b_convention = BConvention::Distance;
    else
      fail("b_convention", "expected \"twice_distance\" or \"distance\"");
  }

  if (const json* sch = optional_member(j, "schedule")) {
    sc.schedule.eps = parse_sequence(member(*sch, "schedule", "eps"),
                                     "schedule.eps");
    sc.schedule.delta = parse_sequence(member(*sch, "schedule", "delta"),
                                       "schedule.delta");
  }

  const json& horizon = member(j, "scenario", "horizon");
  if (!horizon.is_number_unsigned() || horizon.get<std::uint64_t>() < 1)
    fail("horizon", "expected an integer >= 1");
  sc.horizon = horizon.get<std::size_t>();
  if (const json* seed = optional_member(j, "seed"))
    sc.seed = seed->get<std::uint64_t>();

  if (const json* reg = optional_member(j, "region"))
    sc.region = parse_region(*reg, "region");

  if (const json* eps = optional_member(j, "eps_list")) {
    if (!eps->is_array()) fail("eps_list", "expected an array");
    for (std::size_t i = 0; i < eps->size(); ++i) {
      sc.eps_list.push_back(parse_rational_value(
          (*eps)[i], "eps_list[" + std::to_string(i) + "]"));
      if (sc.eps_list.back() <= 0)
        throw std::invalid_argument("check 'eps-list-positive' failed");
    }
  }

  if (const json* meta = optional_member(j, "metastability")) {
    if (!meta->is_array()) fail("metastability", "expected an array");
    for (std::size_t i = 0; i < meta->size(); ++i) {
      const std::string mp = "metastability[" + std::to_string(i) + "]";
      const json& entry = (*meta)[i];
      sc.metastability.push_back(
          {parse_big_nonneg(member(entry, mp, "k"), mp + ".k"),
           parse_counterfunction(member(entry, mp, "g"), mp + ".g")});
    }
  }

  if (const json* obj = optional_member(j, "objective")) {
    ObjectiveSpec spec;
    spec.f = parse_function(member(*obj, "objective", "f"), "objective.f");
    spec.g = parse_function(member(*obj, "objective", "g"), "objective.g");
    spec.lambda =
        parse_number(member(*obj, "objective", "lambda"), "objective.lambda");
    if (!(spec.lambda > 0)) fail("objective.lambda", "must be > 0");
    sc.objective = std::move(spec);
  }

  // Cross-field invariants, each a named check.
  try {
    require_operator(sc.space, sc.t1);
    require_operator(sc.space, sc.t2);
    require_point(sc.space, sc.x0);
    apply(sc.space, sc.t2, apply(sc.space, sc.t1, sc.x0));
  } catch (const std::exception& e) {
    throw std::invalid_argument(
        std::string("check 'operator-action' failed: ") + e.what());
  }

  if (sc.u) {
    require_point(sc.space, *sc.u);
    const Point su = apply(sc.space, sc.t2, apply(sc.space, sc.t1, *sc.u));
    if (distance(sc.space, *sc.u, su) > kLoadTol)
      throw std::invalid_argument(
          "check 'fixed-point' failed: u moves under T2 T1");
  }

  if (const json* b = optional_member(j, "b")) {
    sc.b = parse_rational_value(*b, "b");
    if (sc.b <= 0) fail("b", "must be > 0");
  } else if (sc.u) {
    BigInt c = ceil_rational(
        rational_from_double(distance(sc.space, sc.x0, *sc.u)));
    if (c == 0) c = 1;
    sc.b = Rational(2 * c);
  } else {
    fail("b", "missing (supply b, or u so it can be derived)");
  }

  if (sc.u) {
    const double d = distance(sc.space, sc.x0, *sc.u);
    const Rational need = sc.b_convention == BConvention::TwiceDistance
                              ? 2 * rational_from_double(d)
                              : rational_from_double(d);
    if (Rational(need) > sc.b + rational_from_double(kLoadTol))
      throw std::invalid_argument(
          "check 'b-covers-x0' failed: b is below the distance bound its "
          "convention tag promises");
  }

  if (sc.region) {
    try {
      require_region(sc.space, *sc.region);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("scenario field 'region': ") +
                                  e.what());
    }
    if (!region_contains(sc.space, *sc.region, sc.x0, kLoadTol))
      throw std::invalid_argument(
          "check 'region-contains-x0' failed: x0 lies outside the region");
  }

  if (sc.objective) check_objective_matches_operators(sc);

  return sc;
}

}  // namespace

Scenario parse_scenario_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON parse error: ") +
                                e.what());
  }
  try {
    return parse_scenario_impl(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario schema error: ") +
                                e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario_json(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Trajectory run_scenario(const Scenario& scenario) {
  Trajectory traj =
      scenario.is_exact()
          ? run_exact(scenario.space, scenario.t1, scenario.t2, scenario.x0,
                      scenario.horizon)
          : run_inexact(scenario.space, scenario.t1, scenario.t2, scenario.x0,
                        scenario.schedule, scenario.horizon, scenario.seed);
  traj.scenario_id = scenario.id;
  return traj;
}

}  // namespace altfix
