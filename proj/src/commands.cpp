#include "levidisc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "levidisc/rng.hpp"

namespace levidisc {

using nlohmann::json;

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Fixture values and flags folded into one effective configuration.
struct Effective {
  Fixture fixture;
  std::string digest;
  double rank_tol = kRankTol;
  double oracle_tol = 1e-8;
  double cluster_tol = 1e-6;
  double eps_pos = 1e-6;
  std::uint64_t seed = 0;
  int samples = 0;
  int fourier_n = 512;
};

Effective resolve(const std::string& path, const CommandOptions& o,
                  int default_samples) {
  Effective e;
  e.fixture = load_fixture(path, &e.digest);
  e.rank_tol = o.tol_set ? o.tol : e.fixture.tol.rank_tol;
  e.oracle_tol = e.fixture.tol.oracle_tol;
  e.cluster_tol = e.fixture.tol.cluster_tol;
  e.eps_pos = e.fixture.tol.eps_positivity;
  e.seed = o.seed_set ? o.seed : e.fixture.seed;
  e.samples = o.samples > 0 ? o.samples : default_samples;
  e.fourier_n = o.fourier_n > 0
                    ? o.fourier_n
                    : (e.fixture.fourier_n > 0 ? e.fixture.fourier_n : 512);
  if (!is_pow2(e.fourier_n) || e.fourier_n < 16)
    throw DomainError("fourier_n must be a power of two >= 16");
  if (!(e.rank_tol > 0)) throw DomainError("tol must be positive");
  return e;
}

json flags_json(const Effective& e, const CommandOptions& o) {
  json f;
  f["tol"] = e.rank_tol;
  f["samples"] = e.samples;
  f["fourier_n"] = e.fourier_n;
  f["format"] = o.format;
  return f;
}

json verdict_json(bool pass, const char* value_name, double value, double tol) {
  json v;
  v["pass"] = pass;
  v[value_name] = value;
  v["tol"] = tol;
  return v;
}

json direction_json(const DirectionVerdict& d, const char* value_name,
                    double tol) {
  json v;
  v["value"] = d.found;
  v["tol"] = tol;
  if (!d.c.empty()) {
    v["witness_c"] = rvector_to_json(d.c);
    v[value_name] = d.value;
  }
  return v;
}

// Runs the command body under the library error taxonomy; every failure is
// reported in the body and mapped to the exit code contract
// (1 numerical, 2 domain, 3 parse).
template <typename Fn>
Report run_guarded(const char* command, Fn&& fn) {
  Report r;
  r.body["version"] = "levi-disc/1";
  r.body["command"] = command;
  auto fail = [&](const char* type, const std::string& msg, int code) {
    r.body["error"] = json{{"type", type}, {"message", msg}};
    r.exit_code = code;
  };
  try {
    fn(r);
  } catch (const ParseError& e) {
    fail("parse", e.what(), 3);
    if (!e.path.empty()) r.body["error"]["path"] = e.path;
  } catch (const StabilityViolation& e) {
    fail("stability-violation", e.what(), 1);
    r.body["error"]["spectral_radius"] = e.spectral_radius;
  } catch (const NoSolutionError& e) {
    fail("no-solution", e.what(), 1);
    r.body["error"]["residual"] = e.residual;
  } catch (const SearchFailure& e) {
    fail("search-failure", e.what(), 1);
    r.body["error"]["best_r"] = e.best_r;
    r.body["error"]["best_rank"] = e.best_rank;
  } catch (const ConstructionFailure& e) {
    fail("construction-failure", e.what(), 1);
    r.body["error"]["best_defect"] = e.best_defect;
  } catch (const AttachmentFailure& e) {
    fail("attachment-failure", e.what(), 1);
    r.body["error"]["residual"] = e.residual;
  } catch (const InconsistentWitness& e) {
    fail("inconsistent-witness", e.what(), 1);
  } catch (const InconsistentLift& e) {
    fail("inconsistent-lift", e.what(), 1);
    r.body["error"]["defect"] = e.defect;
  } catch (const NumericalFailure& e) {
    fail("numerical-failure", e.what(), 1);
    r.body["error"]["diagnostic"] = e.diagnostic;
  } catch (const DomainError& e) {
    fail("domain", e.what(), 2);
  } catch (const Error& e) {
    fail("internal", e.what(), 1);
  } catch (const std::exception& e) {
    fail("internal", e.what(), 1);
  }
  return r;
}

json jet_json(const JetData& j) {
  json out;
  out["phi1"] = cvector_to_json(j.phi1);
  out["lift1"] = cvector_to_json(j.lift1);
  out["j_phi_prime1"] = cvector_to_json(j.j_phi_prime1);
  out["j_lift_prime1"] = cvector_to_json(j.j_lift_prime1);
  return out;
}

json positivity_json(const CirclePositivity& p) {
  json out;
  out["ok"] = p.ok;
  out["min_eig"] = p.min_eig;
  out["margin"] = p.margin;
  out["threshold"] = p.threshold;
  return out;
}

// The direction c used by find-pair and sweep: the fixture's if present
// (validated positive definite), otherwise searched for.
RVector choose_direction(const Effective& e) {
  if (e.fixture.c) {
    EigenDecomposition ed = eig_hermitian(e.fixture.form.combine(*e.fixture.c));
    if (!(ed.eigenvalues[0] > 0))
      throw DomainError("fixture direction c is not positive definite");
    return *e.fixture.c;
  }
  DirectionVerdict d = find_pseudoconvex_direction(
      e.fixture.form, 2000, 1e-8, 8, e.seed + 0x9d2c5680);
  if (!d.found)
    throw DomainError(
        "no positive definite direction found; the form does not appear to "
        "be strongly pseudoconvex");
  return d.c;
}

}  // namespace

Report cmd_classify(const std::string& fixture_path, const CommandOptions& opts) {
  return run_guarded("classify", [&](Report& rep) {
    json& body = rep.body;
    Effective e = resolve(fixture_path, opts, 32);
    body["input"] = json{{"path", fixture_path}, {"digest", e.digest}};
    body["seed"] = e.seed;
    body["flags"] = flags_json(e, opts);

    ClassifyOptions co;
    co.tol = e.rank_tol;
    co.snd_samples = e.samples;
    co.seed = e.seed;
    Classification c = classify(e.fixture.form, co);

    json cls;
    cls["levi_generating"] = json{{"value", c.levi_generating}, {"tol", e.rank_tol}};
    cls["levi_nondegenerate"] =
        json{{"value", c.levi_nondegenerate}, {"tol", e.rank_tol}};
    json snd = direction_json(c.strongly_nondegenerate, "det_abs", e.rank_tol);
    snd["samples"] = e.samples;
    cls["strongly_nondegenerate"] = snd;
    cls["strongly_pseudoconvex"] =
        direction_json(c.strongly_pseudoconvex, "min_eigenvalue", co.spc_tol);
    body["classification"] = cls;
  });
}

Report cmd_find_pair(const std::string& fixture_path, const CommandOptions& opts) {
  return run_guarded("find-pair", [&](Report& rep) {
    json& body = rep.body;
    Effective e = resolve(fixture_path, opts, 200);
    body["input"] = json{{"path", fixture_path}, {"digest", e.digest}};
    body["seed"] = e.seed;
    json flags = flags_json(e, opts);
    flags["shrink"] = opts.shrink;
    body["flags"] = flags;

    const LeviForm& form = e.fixture.form;
    if (!is_levi_generating(form, e.rank_tol))
      throw DomainError("find-pair requires a generating form");

    RVector c = choose_direction(e);
    NormalizedForm nf = normalize_q(form, c, e.rank_tol);
    body["normalization"] =
        json{{"c", rvector_to_json(c)}, {"transform", cmatrix_to_json(nf.transform)}};

    SearchTolerances st;
    st.cluster_tol = e.cluster_tol;
    st.krylov_tol = e.rank_tol;
    st.rank_tol = e.rank_tol;
    NondefectiveSearch search =
        find_nondefective(nf.form, e.samples, e.seed, st);
    json sj;
    sj["lambda_dir"] = rvector_to_json(search.lambda_dir);
    sj["v"] = cvector_to_json(search.v);
    sj["r"] = search.r;
    sj["restarts"] = search.restarts;
    sj["defect_test"] = defect_report_to_json(search.report);
    body["search"] = sj;

    StationaryPairData pair = assemble_pair_params(
        nf.form, search.lambda_dir, search.v, c, opts.shrink, 256, e.eps_pos);
    json pj;
    pj["lambda"] = cvector_to_json(pair.lambda);
    pj["c"] = rvector_to_json(pair.c);
    pj["w0"] = cvector_to_json(pair.w0);
    pj["y0"] = rvector_to_json(pair.y0);
    pj["v"] = cvector_to_json(pair.v);
    body["pair"] = pj;

    LiftParams params{pair.lambda, pair.c};
    body["positivity"] =
        positivity_json(circle_positivity(nf.form, params, 256, e.eps_pos));

    StableSolution sol =
        solve_quadratic(QuadraticPencil::from(nf.form, params));
    body["solver"] = json{{"residual", sol.residual},
                          {"spectral_radius", sol.spectral_radius},
                          {"iterations", sol.iterations}};

    RationalDisc disc = construct_disc(nf.form, pair, e.fourier_n);
    StationaryCheck sc =
        check_stationary(nf.form, disc, params, e.fourier_n, e.oracle_tol);
    DefectReport fr =
        check_defective_fourier(nf.form, disc, e.fourier_n, e.rank_tol);
    KrylovSpan span = krylov_span(sol.x, pair.v, e.rank_tol);
    DefectReport rr = defect_test(nf.form, span, e.rank_tol);

    json dj;
    dj["attachment"] = verdict_json(disc.attachment_residual <= 1e-9,
                                    "residual", disc.attachment_residual, 1e-9);
    dj["stationarity"] = verdict_json(sc.pass, "defect", sc.defect, sc.tol);
    dj["defective_fourier"] = defect_report_to_json(fr);
    dj["defect_test"] = defect_report_to_json(rr);
    dj["oracles_agree"] = (fr.defective == rr.defective);
    dj["rho_m"] = disc.rho_m;
    dj["tail_bound"] = disc.tail_bound;
    body["disc"] = dj;

    LiftBoundary lift =
        lift_boundary(nf.form, disc, params, e.fourier_n, e.oracle_tol);
    body["lift"] = json{{"pole_defect", lift.pole_defect}, {"tol", e.oracle_tol}};
    body["jet"] = jet_json(evaluate_jet(disc, lift, params));

    if (!opts.emit_disc.empty()) {
      DiscFile df{disc, params};
      write_file(opts.emit_disc, disc_to_json(df).dump(2) + "\n");
      body["emitted_disc"] = opts.emit_disc;
    }
    if (!opts.csv.empty()) {
      std::ostringstream ss;
      write_boundary_csv(ss, disc, e.fourier_n);
      write_file(opts.csv, ss.str());
      body["csv"] = opts.csv;
    }
  });
}

Report cmd_check_disc(const std::string& fixture_path,
                      const std::string& disc_path, const CommandOptions& opts) {
  return run_guarded("check-disc", [&](Report& rep) {
    json& body = rep.body;
    Effective e = resolve(fixture_path, opts, 32);
    std::string disc_digest;
    DiscFile df = load_disc(disc_path, &disc_digest);
    body["input"] = json{{"path", fixture_path},
                         {"digest", e.digest},
                         {"disc_path", disc_path},
                         {"disc_digest", disc_digest}};
    body["seed"] = e.seed;
    body["flags"] = flags_json(e, opts);

    const LeviForm& form = e.fixture.form;
    if (df.disc.dim_m() != form.m || df.disc.dim_k() != form.k)
      throw DomainError("disc dimensions do not match the fixture");
    int n = opts.fourier_n > 0 ? opts.fourier_n : df.disc.fourier_n;
    if (!is_pow2(n) || n < 16)
      throw DomainError("fourier_n must be a power of two >= 16");

    bool all_pass = true;
    json checks;

    // Attachment: Re z from the stored coefficients against the boundary
    // values of the form along the resampled w.
    {
      std::vector<CVector> w = df.disc.sample_w(n);
      double worst = 0;
      for (int i = 0; i < n; ++i) {
        cdouble zeta = std::polar(1.0, 2.0 * 3.14159265358979323846 * i / n);
        CVector z = df.disc.z_at(zeta);
        for (int j = 0; j < form.k; ++j) {
          double h = dot_conj(w[i], form.matrices[j].matrix() * w[i]).real();
          worst = std::max(worst, std::abs(z[j].real() - h));
        }
      }
      bool pass = worst <= 1e-9;
      all_pass = all_pass && pass;
      checks["attachment"] = verdict_json(pass, "residual", worst, 1e-9);
    }

    StationaryCheck sc =
        check_stationary(form, df.disc, df.params, n, e.oracle_tol);
    all_pass = all_pass && sc.pass;
    checks["stationarity"] = verdict_json(sc.pass, "defect", sc.defect, sc.tol);

    DefectReport fr = check_defective_fourier(form, df.disc, n, e.rank_tol);
    checks["defective_fourier"] = defect_report_to_json(fr);

    // Cross-check through the matrix equation when the parameters admit it.
    CirclePositivity pos = circle_positivity(form, df.params, 256, e.eps_pos);
    checks["positivity"] = positivity_json(pos);
    if (pos.ok) {
      StableSolution sol =
          solve_quadratic(QuadraticPencil::from(form, df.params));
      CMatrix eye_minus = CMatrix::identity(form.m) - df.disc.m;
      CVector v_disc = solve_complex(eye_minus, df.disc.u);
      if (norm2(v_disc) > 0) {
        KrylovSpan span = krylov_span(sol.x, v_disc, e.rank_tol);
        DefectReport rr = defect_test(form, span, e.rank_tol);
        checks["defect_test"] = defect_report_to_json(rr);
        checks["oracles_agree"] = (fr.defective == rr.defective);
        all_pass = all_pass && (fr.defective == rr.defective);
      }
    }

    if (sc.pass) {
      LiftBoundary lift = lift_boundary(form, df.disc, df.params, n, e.oracle_tol);
      checks["lift"] =
          json{{"pole_defect", lift.pole_defect}, {"tol", e.oracle_tol}};
      body["jet"] = jet_json(evaluate_jet(df.disc, lift, df.params));
    }

    body["checks"] = checks;
    body["all_pass"] = all_pass;
    if (!opts.csv.empty()) {
      std::ostringstream ss;
      write_boundary_csv(ss, df.disc, n);
      write_file(opts.csv, ss.str());
      body["csv"] = opts.csv;
    }
    if (!all_pass) {
      body["error"] = json{{"type", "verification"},
                           {"message", "one or more disc checks failed"}};
      rep.exit_code = 1;
    }
  });
}

Report cmd_sweep(const std::string& fixture_path, const CommandOptions& opts) {
  return run_guarded("sweep", [&](Report& rep) {
    json& body = rep.body;
    Effective e = resolve(fixture_path, opts, 200);
    body["input"] = json{{"path", fixture_path}, {"digest", e.digest}};
    body["seed"] = e.seed;
    json flags = flags_json(e, opts);
    flags["lambda_zero"] = opts.lambda_zero;
    body["flags"] = flags;

    const LeviForm& form = e.fixture.form;
    RVector c0 = choose_direction(e);
    double form_scale = 0;
    for (const HermitianMatrix& a : form.matrices)
      form_scale = std::max(form_scale, a.frobenius_norm());

    Rng rng(e.seed);
    int defective = 0;
    int degenerate = 0;
    RVector margins;
    margins.reserve(e.samples);

    for (int trial = 0; trial < e.samples; ++trial) {
      // Admissible c near the witness: perturb, keep positive definite.
      RVector ct = c0;
      for (int attempt = 0; attempt < 20; ++attempt) {
        RVector cand(form.k);
        for (int j = 0; j < form.k; ++j) cand[j] = c0[j] + 0.3 * rng.gaussian();
        double nn = norm2(cand);
        if (nn == 0) continue;
        for (double& x : cand) x /= nn;
        EigenDecomposition ed = eig_hermitian(form.combine(cand));
        if (ed.eigenvalues[0] > e.eps_pos * form_scale) {
          ct = std::move(cand);
          break;
        }
      }

      CVector lt(form.k, cdouble(0));
      if (!opts.lambda_zero) {
        CVector dir = rng.unit_complex(form.k);
        double t = 1.0;
        bool ok = false;
        for (int halvings = 0; halvings <= 60; ++halvings, t *= 0.5) {
          CVector cand(form.k);
          for (int j = 0; j < form.k; ++j) cand[j] = t * dir[j];
          if (circle_positivity(form, {cand, ct}, 256, e.eps_pos).ok) {
            lt = std::move(cand);
            ok = true;
            break;
          }
        }
        if (!ok) continue;  // not admissible at any scale; skip the trial
      }

      CVector vt = rng.unit_complex(form.m);
      StableSolution sol =
          solve_quadratic(QuadraticPencil::from(form, {lt, ct}));
      KrylovSpan span = krylov_span(sol.x, vt, e.rank_tol);
      DefectReport rep = defect_test(form, span, e.rank_tol);
      if (rep.defective) ++defective;
      if (rep.degenerate) ++degenerate;
      margins.push_back(rep.margin);
    }

    json sw;
    sw["trials"] = e.samples;
    sw["completed"] = static_cast<int>(margins.size());
    sw["defective_count"] = defective;
    sw["defective_fraction"] =
        margins.empty() ? 0.0 : static_cast<double>(defective) / margins.size();
    sw["degenerate_count"] = degenerate;
    sw["tol"] = e.rank_tol;
    if (!margins.empty()) {
      RVector sorted = margins;
      std::sort(sorted.begin(), sorted.end());
      sw["margin_min"] = sorted.front();
      sw["margin_max"] = sorted.back();
      sw["margin_median"] = sorted[sorted.size() / 2];
    }
    body["sweep"] = sw;
  });
}

std::string render_report(const Report& r, const std::string& format) {
  if (format == "json") return r.body.dump(2) + "\n";
  if (format != "text") throw DomainError("format must be json or text");
  std::ostringstream os;
  // Indented key/value rendering; arrays compact on one line.  Key order is
  // the serialized (sorted) order, so the text form is deterministic too.
  const std::function<void(const json&, int)> walk = [&](const json& j,
                                                         int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        os << pad << it.key() << ":\n";
        walk(*it, depth + 1);
      } else {
        os << pad << it.key() << ": " << it->dump() << "\n";
      }
    }
  };
  walk(r.body, 0);
  return os.str();
}

}  // namespace levidisc
