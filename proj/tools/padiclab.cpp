// padiclab command-line driver.

#include "padiclab/corpus.hpp"
#include "padiclab/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace padiclab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kComputation = 2, kProperty = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string output;
  bool timing = false;
  uint64_t seed = corpus::kDefaultSeed;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Rational rational_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<Integer> integer_list(const std::string& flag, const std::string& text) {
  std::vector<Integer> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

// A polynomial flag names a file when one exists at that path, else holds the text.
std::string text_or_file(const std::string& value) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(value, ec)) return read_file(value);
  return value;
}

Json read_json_file(const std::string& flag, const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw UsageError(flag + ": " + path + " is not valid JSON (" + e.what() + ")");
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

const CLI::Validator kOddPrime(
    [](std::string& s) -> std::string {
      try {
        const long v = std::stol(s);
        if (v >= 3 && is_prime(v)) return {};
      } catch (const std::exception&) {
      }
      return "must be an odd prime";
    },
    "ODD PRIME");

struct Outcome {
  Json parameters;
  Json result;
  int status = kOk;
};

class Driver {
 public:
  Driver(std::string name, Common& common) : name_(std::move(name)), common_(common) {}

  int run(const std::function<Outcome()>& body) const {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = body();
    } catch (const UsageError& e) {
      std::cerr << "padiclab " << name_ << ": " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "padiclab " << name_ << ": " << e.what() << "\n";
      out.status = kComputation;
      out.result = Json{{"error", e.what()}};
    }
    Json doc;
    doc["schema"] = "padiclab/" + name_ + "/v1";
    doc["command"] = name_;
    doc["parameters"] = out.parameters;
    doc["seed"] = common_.seed;
    doc["status"] = out.status == kOk ? "ok" : out.status == kProperty ? "property-failure" : "error";
    doc["result"] = out.result;
    if (common_.timing) {
      doc["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    }
    const std::string text = doc.dump(2) + "\n";
    if (common_.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(common_.output);
      if (!f) {
        std::cerr << "padiclab " << name_ << ": --output: cannot write " << common_.output << "\n";
        return kComputation;
      }
      f << text;
    }
    return out.status;
  }

 private:
  std::string name_;
  Common& common_;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output,-o", c.output, "Write the JSON result here instead of stdout");
  sub->add_flag("--timing", c.timing, "Include wall-clock timing (output is otherwise byte-identical)");
  sub->add_option("--seed", c.seed, "Seed for randomized sampling; recorded in the output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padiclab: p-adic integration, pseudonorms, equimeasurability and F_q point existence"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  // integrate
  auto* integ = app.add_subcommand("integrate", "Integrate prod |F_i|^r_i over a coset of Z_p^n");
  int64_t ip = 3;
  std::string ir = "1", ipoly, icoset;
  std::vector<std::string> ifactors;
  int64_t idepth = 8;
  size_t invars = 0;
  bool ino_tails = false;
  integ->add_option("--p", ip, "Odd prime")->required()->check(kOddPrime);
  integ->add_option("--r", ir, "Exponent for --poly (rational)");
  integ->add_option("--poly", ipoly, "Polynomial text or a file holding it");
  integ->add_option("--factor", ifactors, "Extra factor POLY:EXPONENT (repeatable)");
  integ->add_option("--depth", idepth, "Subdivision depth")->check(CLI::Range(0, 40));
  integ->add_option("--nvars", invars, "Number of variables (default: inferred)")->check(CLI::Range(1, 4));
  integ->add_option("--coset", icoset, "Region LEVEL:c0,c1,... (default Z_p^n)");
  integ->add_flag("--no-tails", ino_tails, "Disable the exact root-tail rule at the cap");
  add_common(integ, common);
  integ->callback([&] {
    action = [&] {
      return Driver("integrate", common).run([&] {
        if (ipoly.empty() && ifactors.empty()) throw UsageError("--poly or --factor is required");
        std::vector<std::pair<SparsePolynomial, Rational>> factors;
        size_t n = invars;
        auto add = [&](const std::string& flag, const std::string& text, const Rational& r) {
          SparsePolynomial f(1);
          try {
            f = polynomial_from_text(text_or_file(text), std::max<size_t>(invars, 1));
          } catch (const DomainError& e) {
            throw UsageError(flag + ": " + e.what());
          }
          n = std::max(n, f.nvars());
          factors.emplace_back(f, r);
        };
        if (!ipoly.empty()) add("--poly", ipoly, rational_flag("--r", ir));
        for (const auto& fac : ifactors) {
          const auto pos = fac.rfind(':');
          if (pos == std::string::npos) throw UsageError("--factor: expected POLY:EXPONENT, got '" + fac + "'");
          add("--factor", fac.substr(0, pos), rational_flag("--factor", fac.substr(pos + 1)));
        }
        Integrand f(ip, n);
        Json pf = Json::array();
        for (const auto& [g, r] : factors) {
          f.add_factor(g.widen(n), r);
          pf.push_back(Json{{"poly", g.to_string()}, {"exponent", r.get_str()}});
        }
        Coset region = Coset::whole(n);
        if (!icoset.empty()) {
          const auto pos = icoset.find(':');
          try {
            region.level = std::stoll(icoset.substr(0, pos));
            if (pos != std::string::npos) {
              const auto c = integer_list("--coset", icoset.substr(pos + 1));
              if (c.size() != n) throw UsageError("--coset: center needs " + std::to_string(n) + " coordinates");
              region.center = c;
            }
            validate_coset(region, ip);
          } catch (const UsageError&) {
            throw;
          } catch (const std::exception& e) {
            throw UsageError(std::string("--coset: ") + e.what());
          }
        }
        IntegrateOptions opts;
        if (ino_tails) opts.exact_tails = false;
        const IntegralResult res = integrate(f, std::span<const Coset>(&region, 1), idepth, opts);
        Json center = Json::array();
        for (const auto& c : region.center) center.push_back(c.get_str());
        Outcome out;
        out.parameters = Json{{"p", ip},
                              {"nvars", n},
                              {"factors", pf},
                              {"region", {{"level", region.level}, {"center", center}}},
                              {"depth", idepth},
                              {"exact_tails", !ino_tails}};
        out.result = to_json(res);
        out.result["integrand"] = f.describe();
        return out;
      });
    };
  });

  // pseudonorm
  auto* pseudo = app.add_subcommand("pseudonorm", "Pseudonorm of a pluricanonical form on y^2 = h(x)");
  std::string pcurve, pcomb;
  size_t pform = 0;
  int64_t pdepth = 4, pcut = 0;
  pseudo->add_option("--curve", pcurve, "Curve description JSON file")->required();
  pseudo->add_option("--form", pform, "Index of the form in the curve description");
  pseudo->add_option("--depth", pdepth, "Subdivision depth")->check(CLI::Range(0, 30));
  pseudo->add_option("--cut", pcut, "Chart boundary |x| <= p^cut")->check(CLI::Range(0, 10));
  pseudo->add_option("--combination", pcomb, "v1,...,vN: pseudonorm of eta_0 + sum v_i eta_i instead");
  add_common(pseudo, common);
  pseudo->callback([&] {
    action = [&] {
      return Driver("pseudonorm", common).run([&] {
        const CurveSetup setup = [&] {
          try {
            return curve_setup_from_json(read_json_file("--curve", pcurve));
          } catch (const DomainError& e) {
            throw UsageError(std::string("--curve: ") + e.what());
          } catch (const Json::exception& e) {
            throw UsageError(std::string("--curve: ") + e.what());
          }
        }();
        Outcome out;
        out.parameters = Json{{"curve", pcurve}, {"depth", pdepth}, {"p", setup.curve.prime()},
                              {"h", setup.curve.h().to_string()}, {"genus", setup.curve.genus()}};
        if (!pcomb.empty()) {
          std::vector<Rational> v;
          for (const auto& s : split(pcomb, ',')) v.push_back(rational_flag("--combination", s));
          if (v.size() + 1 != setup.forms.size()) {
            throw UsageError("--combination: need " + std::to_string(setup.forms.size() - 1) + " coefficients");
          }
          validate_setup(setup);
          const auto rep = linear_combination_pseudonorm(setup.curve, setup.forms, v, pdepth);
          Json vj = Json::array();
          for (const auto& x : v) vj.push_back(x.get_str());
          out.parameters["combination"] = vj;
          out.result = Json{{"direct", to_json(rep.direct)}, {"factored", to_json(rep.factored)}, {"agree", rep.agree}};
          if (!rep.agree) out.status = kProperty;
          return out;
        }
        if (pform >= setup.forms.size()) throw UsageError("--form: index out of range");
        const auto& form = setup.forms[pform];
        const auto fv = validate_form(setup.curve, form);
        out.parameters["form"] = Json{{"index", pform}, {"m", form.m}, {"numerator", form.numerator.to_string()}};
        out.parameters["cut"] = pcut;
        out.result["form_check"] = Json{{"regular", fv.regular},
                                        {"order_at_infinity", fv.order_at_infinity},
                                        {"min_order_at_weierstrass", fv.min_order_at_weierstrass},
                                        {"reason", fv.reason}};
        out.result["pseudonorm"] = to_json(pseudonorm(setup.curve, form, pdepth, pcut));
        return out;
      });
    };
  });

  // equimeasure
  auto* equi = app.add_subcommand("equimeasure", "Compare pushforward measures of two curve setups");
  std::string eleft, eright;
  int64_t edepth = 2, ewindow = 1, egrid = 1, esource = -1;
  equi->add_option("--left", eleft, "Left curve description")->required();
  equi->add_option("--right", eright, "Right curve description")->required();
  equi->add_option("--depth", edepth, "Target coset depth D")->check(CLI::Range(0, 6));
  equi->add_option("--window", ewindow, "Window exponent A")->check(CLI::Range(0, 4));
  equi->add_option("--grid", egrid, "Isometry grid exponent M")->check(CLI::Range(0, 2));
  equi->add_option("--source-depth", esource, "Source subdivision cap (default D + 2A + 2)");
  add_common(equi, common);
  equi->callback([&] {
    action = [&] {
      return Driver("equimeasure", common).run([&] {
        auto load = [](const std::string& flag, const std::string& path) {
          try {
            CurveSetup s = curve_setup_from_json(read_json_file(flag, path));
            validate_setup(s);
            return s;
          } catch (const DomainError& e) {
            throw UsageError(flag + ": " + e.what());
          } catch (const Json::exception& e) {
            throw UsageError(flag + ": " + e.what());
          }
        };
        const CurveSetup left = load("--left", eleft), right = load("--right", eright);
        if (left.curve.prime() != right.curve.prime()) throw UsageError("--right: prime differs from --left");
        if (left.forms.size() != right.forms.size()) throw UsageError("--right: number of forms differs from --left");
        PushforwardOptions opts;
        if (esource >= 0) opts.source_depth = esource;
        const StepMeasure a = pushforward(left, edepth, ewindow, opts);
        const StepMeasure b = pushforward(right, edepth, ewindow, opts);
        const CompareReport cmp = equimeasurable_compare(a, b);
        const auto grid = isometry_grid(left.curve.prime(), left.forms.size() - 1, egrid);
        const IsometryReport iso = isometry_scan(left, right, grid, edepth);
        Outcome out;
        out.parameters = Json{{"left", eleft}, {"right", eright}, {"depth", edepth}, {"window", ewindow},
                              {"grid", egrid}, {"source_depth", esource >= 0 ? Json(esource) : Json("default")}};
        const bool agree = cmp.equal == iso.consistent();
        out.result = Json{{"equimeasurable", to_json(cmp)},
                          {"isometry", to_json(iso)},
                          {"verdicts_agree", agree},
                          {"left_measure", to_json(a)},
                          {"right_measure", to_json(b)}};
        if (!agree || !iso.routes_agree) out.status = kProperty;
        return out;
      });
    };
  });

  // witness
  auto* wit = app.add_subcommand("witness", "Construct and verify the compactly supported witness f_0");
  int64_t wp = 3, wwindow = 2, wdepth = 2;
  std::string wr = "1";
  size_t wsamples = 200;
  wit->add_option("--p", wp, "Odd prime")->required()->check(kOddPrime);
  wit->add_option("--r", wr, "Exponent L/M")->required();
  wit->add_option("--samples", wsamples, "Random points beyond the support radius")->check(CLI::Range(0, 100000));
  wit->add_option("--window", wwindow, "Scan tau with |tau| <= p^window")->check(CLI::Range(0, 4));
  wit->add_option("--depth", wdepth, "Step-function depth for the transform")->check(CLI::Range(0, 8));
  add_common(wit, common);
  wit->callback([&] {
    action = [&] {
      return Driver("witness", common).run([&] {
        const Rational r = rational_flag("--r", wr);
        if (r <= 0) throw UsageError("--r: must be positive");
        if (wdepth < wwindow) throw UsageError("--depth: must be at least --window");
        const WitnessFunction w = witness_construct(wp, r);
        std::mt19937_64 rng(common.seed);
        std::vector<Rational> samples;
        while (samples.size() < wsamples) {
          Integer u = std::uniform_int_distribution<int64_t>(1, 1 << 20)(rng);
          if (u % wp == 0) continue;
          if (rng() & 1) u = -u;
          const auto k = static_cast<uint64_t>(w.radius_exponent + 1 + static_cast<int64_t>(rng() % 3));
          samples.emplace_back(Rational(u) / Rational(ipow(wp, k)));
        }
        const WitnessReport rep = witness_verify(w, samples);
        const NonvanishReport nv = fourier_nonvanish(w, wwindow, wdepth);
        Outcome out;
        out.parameters = Json{{"p", wp}, {"r", r.get_str()}, {"samples", wsamples}, {"window", wwindow},
                              {"depth", wdepth}};
        Json verify = to_json(rep);
        verify.erase("samples");
        out.result = Json{{"witness", to_json(w)}, {"verification", verify}, {"fourier_nonvanish", to_json(nv)}};
        const bool nonvanish = nv.tau0.has_value();
        if (!rep.ok() || !nonvanish) out.status = kProperty;
        return out;
      });
    };
  });

  // fourier
  auto* four = app.add_subcommand("fourier", "Fourier transform of a step function on Q_p");
  std::string ffn;
  std::vector<std::string> ftau;
  int fsign = -1;
  four->add_option("--fn", ffn, "Step function JSON file")->required();
  four->add_option("--tau", ftau, "Evaluation point (repeatable)")->required();
  four->add_option("--sign", fsign, "-1 for the transform, +1 for its inverse")->check(CLI::IsMember({-1, 1}));
  add_common(four, common);
  four->callback([&] {
    action = [&] {
      return Driver("fourier", common).run([&] {
        const StepFunction f = [&] {
          try {
            return step_function_from_json(read_json_file("--fn", ffn));
          } catch (const DomainError& e) {
            throw UsageError(std::string("--fn: ") + e.what());
          } catch (const Json::exception& e) {
            throw UsageError(std::string("--fn: ") + e.what());
          }
        }();
        Outcome out;
        Json taus = Json::array(), values = Json::array();
        for (const auto& t : ftau) {
          const Rational tau = rational_flag("--tau", t);
          taus.push_back(tau.get_str());
          Json v = to_json(fourier_step(f, tau, fsign));
          v["tau"] = tau.get_str();
          values.push_back(v);
        }
        out.parameters = Json{{"fn", ffn}, {"tau", taus}, {"sign", fsign}};
        const long double err = inversion_error(f);
        out.result = Json{{"function", to_json(f)}, {"values", values},
                          {"inversion_error", static_cast<double>(err)}};
        if (err > 1e-9L) out.status = kProperty;
        return out;
      });
    };
  });

  // count-points
  auto* cnt = app.add_subcommand("count-points", "Projective point count of a hypersurface over F_q");
  std::string cfield, cpoly;
  size_t cnvars = 0;
  int64_t csearch = 1;
  cnt->add_option("--field", cfield, "q, p or p^e")->required();
  cnt->add_option("--poly", cpoly, "Homogeneous polynomial text or file")->required();
  cnt->add_option("--nvars", cnvars, "Number of projective coordinates (default: inferred)")->check(CLI::Range(2, 6));
  cnt->add_option("--search-degree", csearch, "Extension degrees searched for singular points")
      ->check(CLI::Range(1, 6));
  add_common(cnt, common);
  cnt->callback([&] {
    action = [&] {
      return Driver("count-points", common).run([&] {
        const FqField k = [&] {
          try {
            return FqField::parse(cfield);
          } catch (const DomainError& e) {
            throw UsageError(std::string("--field: ") + e.what());
          }
        }();
        HomogeneousPoly f;
        try {
          const SparsePolynomial g = polynomial_from_text(text_or_file(cpoly), std::max<size_t>(cnvars, 1));
          f = HomogeneousPoly::from_sparse(g.widen(std::max(cnvars, g.nvars())), k);
        } catch (const DomainError& e) {
          throw UsageError(std::string("--poly: ") + e.what());
        }
        if (f.is_zero()) throw UsageError("--poly: polynomial vanishes identically over the field");
        const uint64_t n = count_points(f, k);
        const SmoothnessResult s = is_smooth(f, k, csearch);
        Json modulus = Json::array();
        for (auto c : k.modulus()) modulus.push_back(c);
        Outcome out;
        out.parameters = Json{{"field", cfield}, {"q", k.q()}, {"modulus", modulus}, {"poly", f.to_string(k)},
                              {"nvars", f.nvars}, {"degree", f.degree}, {"search_degree", csearch}};
        out.result = Json{{"count", n}, {"smoothness", to_json(s)}};
        if (f.nvars == 3 && s.verdict == Smoothness::kSmooth) {
          const Integer g = Integer(f.degree - 1) * (f.degree - 2) / 2;
          out.result["hasse_weil"] = to_json(hasse_weil_check(Integer(static_cast<unsigned long>(n)), g, k.q()));
          out.result["hasse_weil"]["genus"] = g.get_str();
          if (!out.result["hasse_weil"]["pass"].get<bool>()) out.status = kProperty;
        }
        return out;
      });
    };
  });

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Thresholds on q forcing rational points");
  std::string bprofile, bgenus, bksq, bci;
  bnd->add_option("--profile", bprofile, "n,Hn,KHn1");
  bnd->add_option("--genus", bgenus, "Curve genus g");
  bnd->add_option("--ksq", bksq, "K^2 of a minimal surface of general type");
  bnd->add_option("--ci", bci, "Complete intersection degrees d1,...,dr");
  add_common(bnd, common);
  bnd->callback([&] {
    action = [&] {
      return Driver("bounds", common).run([&] {
        if (bprofile.empty() && bgenus.empty() && bksq.empty() && bci.empty()) {
          throw UsageError("one of --profile, --genus, --ksq, --ci is required");
        }
        Outcome out;
        auto guard = [](const std::string& flag, auto&& fn) {
          try {
            return fn();
          } catch (const DomainError& e) {
            throw UsageError(flag + ": " + e.what());
          }
        };
        if (!bprofile.empty()) {
          const auto v = integer_list("--profile", bprofile);
          if (v.size() != 3) throw UsageError("--profile: expected n,Hn,KHn1");
          const IntersectionProfile pr{v[0].get_si(), v[1], v[2]};
          const Integer t = guard("--profile", [&] { return theorem_threshold(pr); });
          out.parameters["profile"] = Json{{"n", pr.n}, {"Hn", pr.hn.get_str()}, {"KHn1", pr.khn1.get_str()}};
          Json row{{"threshold", t.get_str()}};
          try {
            row["section_genus"] = adjunction_genus(pr).get_str();
          } catch (const DomainError& e) {
            row["section_genus"] = nullptr;
            row["section_genus_error"] = e.what();
          }
          out.result["profile"] = row;
        }
        if (!bgenus.empty()) {
          const auto v = integer_list("--genus", bgenus);
          out.parameters["genus"] = v[0].get_str();
          out.result["hasse_weil"] =
              Json{{"threshold", guard("--genus", [&] { return hasse_weil_threshold(v[0]); }).get_str()}};
        }
        if (!bksq.empty()) {
          const auto v = integer_list("--ksq", bksq);
          out.parameters["ksq"] = v[0].get_str();
          out.result["surface"] = Json{{"threshold", guard("--ksq", [&] { return surface_threshold(v[0]); }).get_str()}};
        }
        if (!bci.empty()) {
          const auto v = integer_list("--ci", bci);
          Json d = Json::array();
          for (const auto& x : v) d.push_back(x.get_str());
          out.parameters["ci"] = d;
          out.result["complete_intersection"] =
              Json{{"threshold", guard("--ci", [&] { return complete_intersection_threshold(v); }).get_str()}};
        }
        return out;
      });
    };
  });

  // verify-nontrivial
  auto* ver = app.add_subcommand("verify-nontrivial", "Certify a rational point on a smooth surface in P^3");
  std::string vfield, vpoly, vcert;
  ver->add_option("--field", vfield, "q, p or p^e")->required();
  ver->add_option("--poly", vpoly, "Homogeneous quartic (or any degree) in x0..x3, text or file")->required();
  ver->add_option("--certificate", vcert, "Also write the certificate JSON here");
  add_common(ver, common);
  ver->callback([&] {
    action = [&] {
      return Driver("verify-nontrivial", common).run([&] {
        const FqField k = [&] {
          try {
            return FqField::parse(vfield);
          } catch (const DomainError& e) {
            throw UsageError(std::string("--field: ") + e.what());
          }
        }();
        HomogeneousPoly f;
        try {
          f = HomogeneousPoly::from_sparse(polynomial_from_text(text_or_file(vpoly), 4).widen(4), k);
        } catch (const DomainError& e) {
          throw UsageError(std::string("--poly: ") + e.what());
        }
        const NontrivialCertificate c = verify_nontrivial(f, k);
        Outcome out;
        out.parameters = Json{{"field", vfield}, {"q", k.q()}, {"poly", f.to_string(k)}};
        out.result = to_json(c);
        if (!vcert.empty()) {
          std::ofstream file(vcert);
          if (!file) throw UsageError("--certificate: cannot write " + vcert);
          file << out.result.dump(2) << "\n";
        }
        if (!c.ok()) out.status = kProperty;
        return out;
      });
    };
  });

  // corpus
  auto* corp = app.add_subcommand("corpus", "Run the acceptance corpora");
  std::string ccrit;
  bool cverbose = false;
  corp->add_option("--criteria", ccrit, "Comma-separated criterion ids (default: all)");
  corp->add_flag("--verbose", cverbose, "Keep every per-case row");
  add_common(corp, common);
  corp->callback([&] {
    action = [&] {
      return Driver("corpus", common).run([&] {
        std::vector<int> ids;
        if (ccrit.empty()) {
          for (int i = 1; i <= corpus::kCriteria; ++i) ids.push_back(i);
        } else {
          for (const auto& x : integer_list("--criteria", ccrit)) {
            if (x < 1 || x > corpus::kCriteria) throw UsageError("--criteria: ids run from 1 to 10");
            ids.push_back(static_cast<int>(x.get_si()));
          }
        }
        corpus::Options opts{common.seed, cverbose};
        Outcome out;
        Json idj = Json::array();
        for (int id : ids) idj.push_back(id);
        out.parameters = Json{{"criteria", idj}, {"verbose", cverbose}};
        Json rows = Json::array();
        bool all = true;
        for (const auto& r : corpus::run_all(ids, opts)) {
          all = all && r.passed;
          rows.push_back(corpus::to_json(r, common.timing));
        }
        out.result = Json{{"all_passed", all}, {"criteria", rows}};
        if (!all) out.status = kProperty;
        return out;
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  return action ? action() : kUsage;
}
