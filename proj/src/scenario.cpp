#include "dynsamp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace dynsamp {

using ojson = nlohmann::ordered_json;

namespace {

cplx parse_complex(const nlohmann::json& node, const std::string& field) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
        throw validation_error("parse error at '" + field +
                               "': complex scalars are two-element [re, im] arrays");
    return cplx(node[0].get<double>(), node[1].get<double>());
}

ojson dump_complex(cplx z) {
    return ojson::array({z.real(), z.imag()});
}

SpectrumSpec parse_spectrum(const nlohmann::json& node) {
    SpectrumSpec spec;
    if (!node.is_object())
        throw validation_error("parse error at 'spectrum': expected an object");
    if (node.contains("explicit")) {
        spec.kind = SpectrumSpec::Kind::explicit_list;
        const auto& list = node.at("explicit");
        if (!list.is_array() || list.empty())
            throw validation_error("parse error at 'spectrum.explicit': expected a nonempty array");
        int idx = 0;
        for (const auto& item : list) {
            const cplx lam = parse_complex(item, "spectrum.explicit[" + std::to_string(idx) + "]");
            if (lam.real() <= 0.0)
                throw validation_error("validation error at 'spectrum.explicit[" +
                                       std::to_string(idx) + "]': Re(lambda) > 0 violated");
            spec.values.push_back(lam);
            ++idx;
        }
        spec.dimension = static_cast<int>(spec.values.size());
        return spec;
    }
    if (!node.contains("generator") || !node.contains("dimension"))
        throw validation_error(
            "parse error at 'spectrum': needs either 'explicit' or 'generator' + 'dimension'");
    spec.dimension = node.at("dimension").get<int>();
    if (spec.dimension < 1)
        throw validation_error("validation error at 'spectrum.dimension': N >= 1 violated");
    const auto& gen = node.at("generator");
    const std::string kind = gen.at("kind").get<std::string>();
    if (kind == "geometric") {
        spec.kind = SpectrumSpec::Kind::geometric;
        spec.ratio = gen.at("ratio").get<double>();
        if (spec.ratio <= 0.0 || spec.ratio >= 1.0)
            throw validation_error(
                "validation error at 'spectrum.generator.ratio': needs 0 < ratio < 1");
    } else if (kind == "harmonic") {
        spec.kind = SpectrumSpec::Kind::harmonic;
    } else if (kind == "linear") {
        spec.kind = SpectrumSpec::Kind::linear;
    } else if (kind == "affine") {
        spec.kind = SpectrumSpec::Kind::affine;
        spec.offset = parse_complex(gen.at("offset"), "spectrum.generator.offset");
        spec.scale = parse_complex(gen.at("scale"), "spectrum.generator.scale");
    } else {
        throw validation_error("parse error at 'spectrum.generator.kind': unknown generator '" +
                               kind + "'");
    }
    return spec;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("parse error: ") + e.what());
    }
    Scenario s;
    try {
        s.schema_version = doc.value("schema_version", kScenarioSchemaVersion);
        if (s.schema_version != kScenarioSchemaVersion)
            throw validation_error("validation error at 'schema_version': unsupported version");
        s.name = doc.value("name", std::string("unnamed"));
        s.spectrum = parse_spectrum(doc.at("spectrum"));

        if (doc.contains("vectors") && doc.at("vectors").is_object() &&
            doc.at("vectors").contains("explicit")) {
            s.canonical_vectors = false;
            const auto& rows = doc.at("vectors").at("explicit");
            if (!rows.is_array() || rows.empty())
                throw validation_error("parse error at 'vectors.explicit': expected m >= 1 rows");
            const size_t n = rows[0].size();
            if (n != static_cast<size_t>(s.spectrum.dimension))
                throw validation_error(
                    "validation error at 'vectors.explicit': row length must equal spectrum dimension");
            s.explicit_vectors.resize(static_cast<Eigen::Index>(rows.size()),
                                      static_cast<Eigen::Index>(n));
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != n)
                    throw validation_error("validation error at 'vectors.explicit': ragged rows");
                for (size_t j = 0; j < n; ++j)
                    s.explicit_vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        parse_complex(rows[i][j], "vectors.explicit[" + std::to_string(i) + "][" +
                                                      std::to_string(j) + "]");
            }
        } else if (doc.contains("vectors") && doc.at("vectors") != "canonical" &&
                   !(doc.at("vectors").is_object() && doc.at("vectors").value("canonical", false))) {
            throw validation_error(
                "parse error at 'vectors': expected \"canonical\" or {\"explicit\": [...]}");
        }

        if (doc.contains("grid")) {
            const auto& gnode = doc.at("grid");
            const std::string kind = gnode.at("kind").get<std::string>();
            if (kind == "uniform") {
                s.grid = TimeGrid::uniform(gnode.at("step").get<double>(),
                                           gnode.value("cap", 0L));
            } else if (kind == "finite") {
                s.grid = TimeGrid::finite(gnode.at("points").get<std::vector<double>>());
            } else {
                throw validation_error("parse error at 'grid.kind': expected 'uniform' or 'finite'");
            }
        }

        s.noise_sigma = doc.value("noise_sigma", 0.0);
        if (s.noise_sigma < 0.0)
            throw validation_error("validation error at 'noise_sigma': must be >= 0");
        if (doc.contains("sweep")) s.sweep = doc.at("sweep").get<std::vector<int>>();
        if (s.sweep.empty()) s.sweep = {s.spectrum.dimension};
        const bool bounded = s.spectrum.kind == SpectrumSpec::Kind::explicit_list ||
                             !s.canonical_vectors;
        for (int n : s.sweep)
            if (n < 1 || (bounded && n > s.spectrum.dimension))
                throw validation_error(
                    "validation error at 'sweep': entries must lie in [1, spectrum dimension]");
        s.seed = doc.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("parse error: ") + e.what());
    }
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

SpectrumGenerator scenario_generator(const Scenario& s) {
    const SpectrumSpec spec = s.spectrum;
    switch (spec.kind) {
        case SpectrumSpec::Kind::explicit_list:
            return [spec](int j) {
                if (j < 1 || j > static_cast<int>(spec.values.size()))
                    throw validation_error("spectrum index out of range of explicit list");
                return spec.values[static_cast<size_t>(j - 1)];
            };
        case SpectrumSpec::Kind::geometric:
            return [spec](int j) { return cplx(std::pow(spec.ratio, j), 0.0); };
        case SpectrumSpec::Kind::harmonic:
            return [](int j) { return cplx(1.0 / j, 0.0); };
        case SpectrumSpec::Kind::linear:
            return [](int j) { return cplx(static_cast<double>(j), 0.0); };
        case SpectrumSpec::Kind::affine:
            return [spec](int j) { return spec.offset + spec.scale * static_cast<double>(j); };
    }
    throw invariant_error("scenario_generator: unreachable");
}

Spectrum build_spectrum(const Scenario& s, int n) {
    return truncate(scenario_generator(s), n);
}

VectorSet build_vectors(const Scenario& s, const Spectrum& spec) {
    if (s.canonical_vectors) {
        Eigen::MatrixXcd coeffs(1, spec.dimension());
        for (int j = 0; j < spec.dimension(); ++j)
            coeffs(0, j) = std::sqrt(spec.lambda(j).real());
        return make_vector_set(std::move(coeffs), VectorKind::continuous_g);
    }
    if (spec.dimension() > s.explicit_vectors.cols())
        throw validation_error("build_vectors: sweep dimension exceeds explicit vector table");
    return make_vector_set(s.explicit_vectors.leftCols(spec.dimension()),
                           VectorKind::continuous_g);
}

namespace {

double cayley_residual(const QuadForm& cont, const QuadForm& disc) {
    double worst = 0.0;
    for (int j = 0; j < cont.dim(); ++j)
        for (int k = 0; k < cont.dim(); ++k) {
            const double ref = std::abs(cont.matrix(j, k));
            const double diff = std::abs(cont.matrix(j, k) - disc.matrix(j, k));
            worst = std::max(worst, ref > 0.0 ? diff / ref : diff);
        }
    return worst;
}

ojson bounds_json(const FrameBounds& fb) {
    ojson out;
    out["lower"] = fb.lower;
    out["upper"] = fb.upper;
    out["dimension"] = fb.dimension;
    out["numerically_zero"] = fb.numerically_zero;
    return out;
}

ojson scenario_echo(const Scenario& s) {
    ojson echo;
    echo["name"] = s.name;
    echo["dimension"] = s.spectrum.dimension;
    echo["noise_sigma"] = s.noise_sigma;
    echo["seed"] = s.seed;
    echo["sweep"] = s.sweep;
    return echo;
}

}  // namespace

RunReport run_analyze(const Scenario& s, const AnalyzeStages& stages) {
    ojson payload;
    payload["schema_version"] = kScenarioSchemaVersion;
    payload["scenario"] = scenario_echo(s);
    payload["sweep"] = ojson::array();

    for (int n : s.sweep) {
        ojson entry;
        entry["N"] = n;
        try {
            const Spectrum spec = build_spectrum(s, n);
            const VectorSet g = build_vectors(s, spec);
            const QuadForm cont = quadform_continuous(spec, g);

            if (stages.bounds) {
                entry["frame_bounds"] = bounds_json(frame_bounds(cont));
            }
            if (stages.equivalence) {
                const CayleyData cayley = cayley_transform_vectors(spec, g);
                entry["cayley_residual"] =
                    cayley_residual(cont, quadform_discrete(cayley.etas, cayley.a));
            }
            if (stages.conditions) {
                try {
                    const ConditionReport report = full_theorem_check(spec, g);
                    ojson cj;
                    cj["carleson"] = report.carleson.is_carleson;
                    cj["carleson_constant"] = report.carleson.constant_estimate;
                    cj["separation"] = report.separation.satisfied;
                    cj["separation_beta"] = report.separation.beta;
                    cj["cluster"] = report.cluster.satisfied;
                    cj["cluster_min_sigma_sq"] = report.cluster.min_sigma_sq;
                    cj["factorization_C"] = report.factorization.C_bound;
                    cj["structural_verdict"] = report.structural_verdict;
                    cj["verdicts_agree"] = report.verdicts_agree;
                    entry["conditions"] = std::move(cj);
                } catch (const std::exception& e) {
                    entry["conditions"] = ojson{{"error", e.what()}};
                }
            }
            if (stages.discretize) {
                try {
                    const FrameBounds cb = frame_bounds(cont);
                    ojson dj;
                    if (s.grid) {
                        const GridFrameReport gr = verify_grid_frame(spec, g, *s.grid, cb);
                        dj["grid_lower"] = gr.discrete.lower;
                        dj["grid_upper"] = gr.discrete.upper;
                        dj["scale"] = gr.scale;
                        dj["scaled_lower"] = gr.scaled_lower;
                        dj["is_frame"] = gr.is_frame;
                        dj["rel_deviation_lower"] = gr.rel_deviation_lower;
                        dj["within_band"] = gr.within_band;
                    }
                    if (cb.lower > 0.0) {
                        const DiscretizationCertificate cert =
                            search_delta(spec, g, cb, bessel_constant(g));
                        ojson cj;
                        cj["delta"] = cert.delta;
                        cj["delta0"] = cert.delta0;
                        cj["epsilon"] = cert.epsilon;
                        cj["guaranteed_lower"] = cert.guaranteed_lower;
                        cj["inequality_holds"] = cert.inequality_holds();
                        dj["certificate"] = std::move(cj);
                        const HorizonResult hr = finite_horizon(cb, 1.0, -spec.margin());
                        dj["horizon_L"] = hr.L;
                        dj["horizon_guaranteed_lower"] = hr.guaranteed_lower;
                    }
                    entry["discretization"] = std::move(dj);
                } catch (const std::exception& e) {
                    entry["discretization"] = ojson{{"error", e.what()}};
                }
            }
        } catch (const std::exception& e) {
            entry["error"] = e.what();
        }
        payload["sweep"].push_back(std::move(entry));
    }
    return RunReport{std::move(payload)};
}

RunReport run_reconstruct(const Scenario& s, const ReconstructOptions& options) {
    if (!s.grid) throw validation_error("run_reconstruct: scenario needs a grid");

    ojson payload;
    payload["schema_version"] = kScenarioSchemaVersion;
    payload["scenario"] = scenario_echo(s);

    const int n = s.sweep.back();
    const Spectrum spec = build_spectrum(s, n);
    const VectorSet g = build_vectors(s, spec);

    std::vector<double> times;
    if (s.grid->kind == TimeGrid::Kind::finite_explicit) {
        times = s.grid->points;
    } else {
        const long cap = s.grid->cap > 0 ? s.grid->cap : uniform_tail_cap(spec, s.grid->step);
        times.resize(static_cast<size_t>(cap));
        for (long k = 0; k < cap; ++k) times[static_cast<size_t>(k)] = k * s.grid->step;
    }

    // Analysis operator of the sampled system: row (i, t) maps f to
    // <e^{tA} f, g^i> = sum_j e^{-t lambda_j} conj(g^i_j) f_j.
    const Eigen::Index rows = static_cast<Eigen::Index>(times.size()) * g.m();
    Eigen::MatrixXcd analysis(rows, n);
    Eigen::Index r = 0;
    for (double t : times)
        for (int i = 0; i < g.m(); ++i, ++r)
            for (int j = 0; j < n; ++j)
                analysis(r, j) = std::exp(-t * spec.lambda(j)) * std::conj(g.coeffs(i, j));

    const Eigen::MatrixXcd normal = analysis.adjoint() * analysis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(normal);
    if (solver.info() != Eigen::Success)
        throw numerical_error("run_reconstruct: eigen-solve of the normal matrix failed");
    const double c_est = std::max(0.0, solver.eigenvalues().minCoeff());
    const double upper_est = solver.eigenvalues().maxCoeff();
    if (c_est <= 1e-10 * upper_est)
        throw numerical_error("run_reconstruct: sampled system is not a frame at this truncation");
    const double cond = upper_est / c_est;

    payload["sampled_lower"] = c_est;
    payload["sampled_upper"] = upper_est;
    payload["trials"] = ojson::array();

    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto draw_cplx = [&] { return cplx(gauss(rng), gauss(rng)); };

    for (int trial = 0; trial < options.trials; ++trial) {
        Eigen::VectorXcd f(n);
        if (options.f_true) {
            f = *options.f_true;
        } else {
            for (int j = 0; j < n; ++j) f(j) = draw_cplx();
            f /= f.norm();
        }
        Eigen::VectorXcd noise = Eigen::VectorXcd::Zero(rows);
        if (s.noise_sigma > 0.0)
            for (Eigen::Index k = 0; k < rows; ++k) noise(k) = s.noise_sigma * draw_cplx();
        const Eigen::VectorXcd samples = analysis * f + noise;

        Eigen::VectorXcd recovered;
        if (cond > 1e10) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(analysis,
                                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
            recovered = svd.solve(samples);
        } else {
            recovered = Eigen::LLT<Eigen::MatrixXcd>(normal).solve(analysis.adjoint() * samples);
        }

        const double err = (recovered - f).norm();
        const double bound = noise.norm() / std::sqrt(c_est);
        ojson tj;
        tj["trial"] = trial;
        tj["abs_error"] = err;
        tj["rel_error"] = err / f.norm();
        tj["noise_norm"] = noise.norm();
        tj["error_bound"] = bound;
        tj["satisfied"] = (s.noise_sigma == 0.0) ? true : (err <= bound);
        payload["trials"].push_back(std::move(tj));
    }
    return RunReport{std::move(payload)};
}

namespace {

std::string csv_cell(const ojson& node, const char* key) {
    if (!node.contains(key)) return "";
    const auto& v = node.at(key);
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.dump();
}

}  // namespace

std::string emit_report(const RunReport& report, ReportFormat format) {
    if (format == ReportFormat::json) return report.payload.dump(2) + "\n";

    std::ostringstream out;
    if (report.payload.contains("trials")) {
        out << "trial,abs_error,rel_error,noise_norm,error_bound,satisfied\n";
        for (const auto& t : report.payload.at("trials"))
            out << csv_cell(t, "trial") << ',' << csv_cell(t, "abs_error") << ','
                << csv_cell(t, "rel_error") << ',' << csv_cell(t, "noise_norm") << ','
                << csv_cell(t, "error_bound") << ',' << csv_cell(t, "satisfied") << '\n';
        return out.str();
    }
    out << "N,lower,upper,residual,carleson,separation,cluster,structural\n";
    if (report.payload.contains("sweep")) {
        for (const auto& e : report.payload.at("sweep")) {
            const ojson fb = e.value("frame_bounds", ojson::object());
            const ojson cj = e.value("conditions", ojson::object());
            out << csv_cell(e, "N") << ',' << csv_cell(fb, "lower") << ','
                << csv_cell(fb, "upper") << ',' << csv_cell(e, "cayley_residual") << ','
                << csv_cell(cj, "carleson") << ',' << csv_cell(cj, "separation") << ','
                << csv_cell(cj, "cluster") << ',' << csv_cell(cj, "structural_verdict") << '\n';
        }
    }
    return out.str();
}

}  // namespace dynsamp
