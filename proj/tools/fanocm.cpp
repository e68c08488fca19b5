// Command-line front end: loads family descriptors, runs the exact
// computations, and emits human tables, JSON, or CSV. Every rational in a
// report is exact ("p/q"); only *_approx fields hold floating point.

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fanocm/acceptance.hpp"
#include "fanocm/delta.hpp"
#include "fanocm/family.hpp"
#include "fanocm/hn.hpp"
#include "fanocm/intersect.hpp"
#include "fanocm/plane_systems.hpp"
#include "fanocm/report.hpp"
#include "fanocm/sections.hpp"

namespace {

using namespace fanocm;

enum class Format { table, json, csv };

struct GlobalOptions {
    Format format = Format::table;
    bool no_cache = false;
    bool parallel = false;
    std::string cache_dir;

    std::string resolved_cache_dir() const {
        if (!cache_dir.empty()) return cache_dir;
        if (const char* env = std::getenv("FANOCM_CACHE_DIR")) return env;
        return ".fanocm-cache";
    }
};

FamilyDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open descriptor file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return FamilyDescriptor::parse(buf.str());
}

DivisorClass parse_class(const FamilyDescriptor& fam, const std::string& text) {
    if (text.empty() || text == "-K") return anticanonical_class(fam);
    if (text == "f") return DivisorClass::fiber(fam);
    std::vector<Rational> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        parts.push_back(rational_from_string(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (parts.size() != 2 + fam.centers().size())
        throw validation_error("--class needs xi,f followed by one coefficient per center (" +
                               std::to_string(2 + fam.centers().size()) + " values)");
    return DivisorClass(parts[0], parts[1],
                        std::vector<Rational>(parts.begin() + 2, parts.end()));
}

std::pair<long, long> parse_range(const std::string& text) {
    std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        long v = std::stol(text);
        return {v, v};
    }
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
}

PolarizedModel parse_model(const std::string& text) {
    // "P1:d=2", "P3:d=4"
    if (text.size() < 2 || (text[0] != 'P' && text[0] != 'p'))
        throw validation_error("--model must look like P<n>:d=<degree>");
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw validation_error("--model must look like P<n>:d=<degree>");
    unsigned n = static_cast<unsigned>(std::stoul(text.substr(1, colon - 1)));
    std::string rest = text.substr(colon + 1);
    if (rest.rfind("d=", 0) != 0) throw validation_error("--model must look like P<n>:d=<degree>");
    return PolarizedModel(n, rational_from_string(rest.substr(2)));
}

void emit(const RunReport& report, const GlobalOptions& global) {
    switch (global.format) {
        case Format::json: std::cout << report.to_json().dump(2) << "\n"; break;
        case Format::csv: std::cout << report.to_csv(); break;
        default: std::cout << report.to_table(); break;
    }
}

std::string cache_file_name(const std::string& key) {
    std::string safe;
    for (char c : key) safe += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return safe + ".json";
}

/// Section-table cache: one JSON file per (descriptor hash, command, params).
std::optional<nlohmann::ordered_json> cache_load(const GlobalOptions& global,
                                                 const std::string& key) {
    if (global.no_cache) return std::nullopt;
    std::ifstream in(global.resolved_cache_dir() + "/" + cache_file_name(key));
    if (!in) return std::nullopt;
    try {
        nlohmann::ordered_json j;
        in >> j;
        return j;
    } catch (...) {
        return std::nullopt;
    }
}

void cache_store(const GlobalOptions& global, const std::string& key,
                 const nlohmann::ordered_json& j) {
    if (global.no_cache) return;
    std::error_code ec;
    std::filesystem::create_directories(global.resolved_cache_dir(), ec);
    if (ec) return;
    std::ofstream out(global.resolved_cache_dir() + "/" + cache_file_name(key));
    if (out) out << j.dump();
}

int run_cm_degree(const std::string& path, const GlobalOptions& global) {
    FamilyDescriptor fam = load_descriptor(path);
    const auto t0 = std::chrono::steady_clock::now();
    Rational deg = cm_degree(fam);
    auto rows = cm_degree_ledger(fam);
    RunReport report("cm-degree");
    report.input("descriptor", path);
    report.input("descriptor_hash", fam.hash());
    report.output("cm_degree", deg);
    for (const auto& row : rows) {
        if (row.coefficient == 0) continue;  // monomial absent from the expansion
        report.output("expansion." + row.monomial,
                      row.contribution.get_str() + " (mult " + row.multiplicity.get_str() +
                          ", coeff " + row.coefficient.get_str() + ", value " +
                          row.value.get_str() + ")");
    }
    report.metadata("note", "cm_degree = -sum of the expansion rows");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_sections(const std::string& path, const std::string& class_text,
                 const std::string& m_range, const GlobalOptions& global) {
    FamilyDescriptor fam = load_descriptor(path);
    DivisorClass cls = parse_class(fam, class_text);
    auto [m_lo, m_hi] = parse_range(m_range);
    if (m_lo < 1 || m_hi < m_lo) throw validation_error("bad --m-range");

    const std::string key = fam.hash() + "-sections-" + cls.to_string() + "-" +
                            std::to_string(m_lo) + ".." + std::to_string(m_hi);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report("sections");
    report.input("descriptor", path);
    report.input("descriptor_hash", fam.hash());
    report.input("class", cls.to_string());
    report.input("m_range", m_range);

    if (auto cached = cache_load(global, key)) {
        for (const auto& [k, v] : cached->items()) report.output(k, v.get<std::string>());
        report.metadata("cache", "hit");
    } else {
        std::vector<Integer> values(static_cast<std::size_t>(m_hi - m_lo + 1));
        if (global.parallel) {
            std::vector<std::future<Integer>> futures;
            for (long m = m_lo; m <= m_hi; ++m)
                futures.push_back(std::async(std::launch::async,
                                             [&fam, &cls, m] { return h0(fam, cls, m); }));
            for (std::size_t i = 0; i < futures.size(); ++i) values[i] = futures[i].get();
        } else {
            for (long m = m_lo; m <= m_hi; ++m)
                values[static_cast<std::size_t>(m - m_lo)] = h0(fam, cls, m);
        }
        nlohmann::ordered_json cache_entry = nlohmann::ordered_json::object();
        for (long m = m_lo; m <= m_hi; ++m) {
            const std::string k = "h0(m=" + std::to_string(m) + ")";
            const std::string v = values[static_cast<std::size_t>(m - m_lo)].get_str();
            report.output(k, v);
            cache_entry[k] = v;
        }
        cache_store(global, key, cache_entry);
        report.metadata("cache", global.no_cache ? "disabled" : "miss");
    }
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_volume(const std::string& path, const std::string& class_text,
               const GlobalOptions& global) {
    FamilyDescriptor fam = load_descriptor(path);
    DivisorClass cls = parse_class(fam, class_text);
    const auto t0 = std::chrono::steady_clock::now();
    VolumeEstimate est = volume_estimate(fam, cls);
    RunReport report("volume");
    report.input("descriptor", path);
    report.input("descriptor_hash", fam.hash());
    report.input("class", cls.to_string());
    report.output("volume", est.volume);
    report.metadata("fit", est.fit.to_string("m"));
    report.metadata("fit_range", "m = " + std::to_string(est.m_start) + " stride " +
                                     std::to_string(est.stride) + ", validated on 3 extra points");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_splitting(const std::string& path, const std::string& class_text, long m,
                  const GlobalOptions& global) {
    FamilyDescriptor fam = load_descriptor(path);
    DivisorClass cls = parse_class(fam, class_text);
    const auto t0 = std::chrono::steady_clock::now();
    SplittingType st = pushforward_splitting(fam, cls, m);
    RunReport report("splitting");
    report.input("descriptor", path);
    report.input("descriptor_hash", fam.hash());
    report.input("class", cls.to_string());
    report.input("m", m);
    report.output("splitting", st.to_string());
    report.output("rank", Integer(st.degrees.size()));
    report.output("degree_sum", st.degree_sum());
    report.output("h0", st.h0());
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_hn_fraction(const std::string& profile_text, const std::string& m_range, unsigned genus,
                    const std::string& threshold_text, bool with_clt, bool with_chebyshev,
                    const GlobalOptions& global) {
    HNProfile profile = HNProfile::parse(profile_text, genus);
    auto [m_lo, m_hi] = parse_range(m_range);
    if (m_lo < 1 || m_hi < m_lo) throw validation_error("bad --m-range");
    const Rational threshold = threshold_text.empty()
                                   ? Rational(2 * static_cast<long>(genus))
                                   : rational_from_string(threshold_text);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report("hn-fraction");
    report.input("profile", profile_text);
    report.input("genus", static_cast<long>(genus));
    report.input("threshold", threshold);
    std::vector<Rational> fractions(static_cast<std::size_t>(m_hi - m_lo + 1));
    if (global.parallel) {
        std::vector<std::future<Rational>> futures;
        for (long m = m_lo; m <= m_hi; ++m)
            futures.push_back(std::async(std::launch::async, [&profile, &threshold, m] {
                return gg_fraction(profile, static_cast<unsigned long>(m), threshold);
            }));
        for (std::size_t i = 0; i < futures.size(); ++i) fractions[i] = futures[i].get();
    } else {
        for (long m = m_lo; m <= m_hi; ++m)
            fractions[static_cast<std::size_t>(m - m_lo)] =
                gg_fraction(profile, static_cast<unsigned long>(m), threshold);
    }
    for (long m = m_lo; m <= m_hi; ++m) {
        const auto mu = static_cast<unsigned long>(m);
        report.output("fraction(m=" + std::to_string(m) + ")",
                      fractions[static_cast<std::size_t>(m - m_lo)]);
        if (with_chebyshev)
            report.output("chebyshev(m=" + std::to_string(m) + ")",
                          chebyshev_lower_bound(profile, mu, threshold));
        if (with_clt)
            report.output_approx("clt(m=" + std::to_string(m) + ")",
                                 clt_estimate_approx(profile, mu, threshold));
    }
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_hn_spectrum(const std::string& profile_text, long m, unsigned genus,
                    const GlobalOptions& global) {
    HNProfile profile = HNProfile::parse(profile_text, genus);
    if (m < 1) throw validation_error("--m must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    GradedSpectrum spec = tensor_graded(profile, static_cast<unsigned long>(m));
    RunReport report("hn-spectrum");
    report.input("profile", profile_text);
    report.input("m", m);
    for (const auto& piece : spec.pieces)
        report.output("rank(slope=" + rational_to_string(piece.slope) + ")", piece.rank);
    report.output("total_rank", spec.total_rank());
    report.output("mean_slope", spec.mean_slope());
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_sym_fraction(const std::string& degrees_text, const std::string& m_range,
                     const std::string& threshold_text, const GlobalOptions& global) {
    std::vector<long> degrees;
    std::size_t pos = 0;
    while (pos <= degrees_text.size() && !degrees_text.empty()) {
        std::size_t comma = degrees_text.find(',', pos);
        if (comma == std::string::npos) comma = degrees_text.size();
        degrees.push_back(std::stol(degrees_text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    auto [m_lo, m_hi] = parse_range(m_range);
    if (m_lo < 1 || m_hi < m_lo) throw validation_error("bad --m-range");
    const Rational threshold =
        threshold_text.empty() ? Rational(0) : rational_from_string(threshold_text);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report("sym-fraction");
    report.input("degrees", degrees_text);
    report.input("threshold", threshold);
    for (long m = m_lo; m <= m_hi; ++m)
        report.output("fraction(m=" + std::to_string(m) + ")",
                      sym_fraction(degrees, static_cast<unsigned long>(m), threshold));
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_delta(const std::string& model_text, const std::string& valuation_text,
              const std::string& q_range, const GlobalOptions& global) {
    PolarizedModel model = parse_model(model_text);
    ValuationModel valuation = [&] {
        if (valuation_text == "point" || valuation_text == "point_blowup")
            return ValuationModel::point_blowup();
        if (valuation_text == "hyperplane") return ValuationModel::hyperplane();
        throw validation_error("--valuation must be 'point' or 'hyperplane'");
    }();
    auto [q_lo, q_hi] = parse_range(q_range);
    if (q_lo < 1 || q_hi < q_lo) throw validation_error("bad --q-range");
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report("delta");
    report.input("model", model_text);
    report.input("valuation", valuation_text);
    report.output("A", valuation.log_discrepancy(model));
    for (long q = q_lo; q <= q_hi; ++q) {
        Rational sq = s_q(model, valuation, q);
        report.output("S_q(q=" + std::to_string(q) + ")", sq);
        report.output("A/S_q(q=" + std::to_string(q) + ")", valuation.log_discrepancy(model) / sq);
    }
    report.output("S_limit", s_infinity(model, valuation));
    report.output("A/S_limit", ratio_A_over_S(model, valuation));
    if (model.n == 1 && is_integer(model.d))
        report.output("delta_q_p1", delta_q_p1(to_long(to_integer(model.d)), q_lo));
    report.metadata("note", "ratios are upper bounds for delta; exact on P^1");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_km_check(const std::string& path, long s, const GlobalOptions& global) {
    FamilyDescriptor fam = load_descriptor(path);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report("km-check");
    report.input("descriptor", path);
    report.input("descriptor_hash", fam.hash());
    report.input("s", s);
    KMCoefficients km = km_coefficients(fam, s);  // throws if an identity fails
    for (std::size_t i = 0; i < km.m_degrees.size(); ++i)
        report.output("deg_M" + std::to_string(i), km.m_degrees[i]);
    report.output("lcm_degree", km.lcm_degree);
    report.output("mu_sL", km.mu_sl);
    report.output("cm_degree", cm_degree(fam));
    report.output("pushforward_degree_poly", km.pushforward_degree.to_string());
    report.metadata("identities", "deg M_{n+1} = -s^{n+1} deg lambda; deg L_CM = s^n deg lambda; "
                                  "expansion coefficients match the intersection numbers");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_nef_check(const std::string& path, const std::string& class_text,
                  const GlobalOptions& global) {
    FamilyDescriptor fam = load_descriptor(path);
    DivisorClass cls = parse_class(fam, class_text);
    const auto t0 = std::chrono::steady_clock::now();
    NefCertificate cert = nef_test(fam, cls);
    RunReport report("nef-check");
    report.input("descriptor", path);
    report.input("descriptor_hash", fam.hash());
    report.input("class", cls.to_string());
    report.output("verdict", cert.verdict == NefCertificate::Verdict::not_nef
                                 ? std::string("not_nef")
                                 : std::string("passes_test_set"));
    if (cert.witness) {
        report.output("witness", cert.witness->description);
        report.output("witness_value", cert.witness->value);
    }
    report.metadata("scope", cert.restriction_squares_checked
                                 ? "test curves and restriction squares"
                                 : "test curves only (partial: restriction squares need r = 3)");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_bounds(const std::string& vol, unsigned dim, const std::string& fiber_vol,
               const std::string& alpha, const std::string& delta, unsigned n,
               const GlobalOptions& global) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report("bounds");
    bool any = false;
    if (!vol.empty() && !fiber_vol.empty()) {
        any = true;
        VolumeBoundReport r =
            volume_bound_check(rational_from_string(vol), dim, rational_from_string(fiber_vol));
        report.input("volume", vol);
        report.input("dim", static_cast<long>(dim));
        report.input("fiber_volume", fiber_vol);
        report.output("fiber_bound_holds", std::string(r.fiber_bound_holds ? "yes" : "no"));
        report.output("fiber_margin", r.fiber_margin);
        report.output("absolute_bound_holds", std::string(r.absolute_bound_holds ? "yes" : "no"));
        report.output("absolute_margin", r.absolute_margin);
    }
    if (!alpha.empty() && !delta.empty()) {
        any = true;
        BoundsReport r =
            alpha_delta_bounds_check(rational_from_string(alpha), rational_from_string(delta), n);
        report.input("alpha", alpha);
        report.input("delta", delta);
        report.input("n", static_cast<long>(n));
        report.output("lower_bound_holds", std::string(r.lower_holds ? "yes" : "no"));
        report.output("lower_margin", r.lower_margin);
        report.output("upper_bound_holds", std::string(r.upper_holds ? "yes" : "no"));
        report.output("upper_margin", r.upper_margin);
    }
    if (!any)
        throw validation_error("bounds needs --volume/--dim/--fiber-volume or --alpha/--delta/--n");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_plane_system(unsigned degree, unsigned point_mult, unsigned curve_degree,
                     long curve_mult_opt, const GlobalOptions& global) {
    const unsigned curve_mult =
        curve_mult_opt < 0 ? point_mult : static_cast<unsigned>(curve_mult_opt);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<BasePoint> pts;
    for (const auto& p : default_general_points()) pts.push_back({p, point_mult});
    unsigned long dim =
        plane_system_dim(degree, pts, HomogeneousPoly::fermat(curve_degree), curve_mult);
    RunReport report("plane-system");
    report.input("degree", static_cast<long>(degree));
    report.input("point_mult", static_cast<long>(point_mult));
    report.input("curve_degree", static_cast<long>(curve_degree));
    report.input("curve_mult", static_cast<long>(curve_mult));
    report.output("dimension", Integer(dim));
    report.metadata("points", "(1:0:0), (0:1:0), (0:0:1), (1:1:1); curve x^d + y^d + z^d");
    report.set_wall_time(std::chrono::steady_clock::now() - t0);
    emit(report, global);
    return 0;
}

int run_reproduce(const std::string& data_dir, const GlobalOptions& global) {
    const auto t0 = std::chrono::steady_clock::now();
    auto results = run_acceptance_suite(data_dir);
    std::size_t failures = 0;
    if (global.format == Format::json) {
        nlohmann::ordered_json j;
        j["command"] = "reproduce-paper";
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            j["checks"].push_back(
                {{"id", r.id}, {"pass", r.pass}, {"detail", r.detail}});
            if (!r.pass) ++failures;
        }
        j["failures"] = failures;
        j["wall_time_ms_approx"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            if (!r.pass) ++failures;
            std::printf("%-4s %-36s %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                        r.detail.c_str());
        }
        std::printf("%zu/%zu checks passed\n", results.size() - failures, results.size());
    }
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact CM degrees, section counts, HN spectra and delta invariants for model "
                 "Fano families over a curve"};
    app.require_subcommand(1);
    GlobalOptions global;
    app.add_flag_callback("--json", [&] { global.format = Format::json; },
                          "emit a machine-readable JSON report");
    app.add_flag_callback("--csv", [&] { global.format = Format::csv; },
                          "emit outputs as CSV rows");
    app.add_flag("--no-cache", global.no_cache, "disable the on-disk section-table cache");
    app.add_flag("--parallel", global.parallel, "fan parameter sweeps across worker threads");
    app.add_option("--cache-dir", global.cache_dir,
                   "cache directory (default $FANOCM_CACHE_DIR or .fanocm-cache)");

    std::string descriptor, class_text, m_range = "1..10", profile_text, threshold_text;
    std::string model_text = "P1:d=2", valuation_text = "point", q_range = "1..10";
    std::string vol_text, fiber_vol_text, alpha_text, delta_text, data_dir = "data";
    long m_single = 1, s_scale = 1, curve_mult = -1;
    unsigned genus = 0, dim_x = 2, n_dim = 2, degree = 3, point_mult = 1, curve_degree = 1;
    bool with_clt = false, with_chebyshev = false;

    auto* cm = app.add_subcommand("cm-degree", "CM degree with the full expansion ledger");
    cm->add_option("descriptor", descriptor)->required();

    auto* sec = app.add_subcommand("sections", "table of h^0(m * class)");
    sec->add_option("descriptor", descriptor)->required();
    sec->add_option("--class", class_text, "xi,f,e1,... (default: the anticanonical class)");
    sec->add_option("--m-range", m_range, "A..B");

    auto* vol = app.add_subcommand("volume", "volume of a class by exact polynomial fitting");
    vol->add_option("descriptor", descriptor)->required();
    vol->add_option("--class", class_text);

    auto* split = app.add_subcommand("splitting", "pushforward splitting type at level m");
    split->add_option("descriptor", descriptor)->required();
    split->add_option("--class", class_text);
    split->add_option("--m", m_single);

    auto* hn = app.add_subcommand("hn-fraction", "globally-generated rank fractions");
    hn->add_option("--profile", profile_text, "slope:rank pairs, e.g. 2:1,-1:1")->required();
    hn->add_option("--m-range", m_range, "A..B");
    hn->add_option("--genus", genus);
    hn->add_option("--threshold", threshold_text, "slope threshold (default 2g)");
    hn->add_flag("--clt", with_clt, "include the approximate CLT estimate");
    hn->add_flag("--chebyshev", with_chebyshev, "include the exact Chebyshev lower bound");

    auto* hnspec = app.add_subcommand("hn-spectrum", "graded spectrum of a tensor power");
    hnspec->add_option("--profile", profile_text, "slope:rank pairs")->required();
    hnspec->add_option("--m", m_single, "tensor power");
    hnspec->add_option("--genus", genus);

    std::string degrees_text;
    auto* symf = app.add_subcommand("sym-fraction", "summand fraction of a symmetric power "
                                                    "above a degree threshold");
    symf->add_option("--degrees", degrees_text, "split bundle degrees, e.g. -1,1")->required();
    symf->add_option("--m-range", m_range, "A..B");
    symf->add_option("--threshold", threshold_text, "degree threshold (default 0)");

    auto* del = app.add_subcommand("delta", "S_q tables and A/S ratios on (P^n, O(d))");
    del->add_option("--model", model_text, "P<n>:d=<degree>");
    del->add_option("--valuation", valuation_text, "point | hyperplane");
    del->add_option("--q-range", q_range, "A..B");

    auto* km = app.add_subcommand("km-check", "Knudsen-Mumford / CM identities (exits nonzero "
                                              "on any identity failure)");
    km->add_option("descriptor", descriptor)->required();
    km->add_option("--s", s_scale, "scale making s*(-K) very ample (default 1)");

    auto* nef = app.add_subcommand("nef-check", "nef test against the curated curve set");
    nef->add_option("descriptor", descriptor)->required();
    nef->add_option("--class", class_text);

    auto* bounds = app.add_subcommand("bounds", "volume bound and alpha-delta sandwich checks");
    bounds->add_option("--volume", vol_text);
    bounds->add_option("--dim", dim_x);
    bounds->add_option("--fiber-volume", fiber_vol_text);
    bounds->add_option("--alpha", alpha_text);
    bounds->add_option("--delta", delta_text);
    bounds->add_option("--n", n_dim);

    auto* plane = app.add_subcommand("plane-system", "dimension of a plane linear system with "
                                                     "base points and a fixed curve component");
    plane->add_option("--degree", degree)->required();
    plane->add_option("--point-mult", point_mult, "multiplicity at the four general points");
    plane->add_option("--curve-degree", curve_degree, "degree of the fixed Fermat curve");
    plane->add_option("--curve-mult", curve_mult, "multiplicity along the curve (default: "
                                                  "point multiplicity)");

    auto* repro = app.add_subcommand("reproduce-paper", "run the bundled verification suite");
    repro->add_option("--data-dir", data_dir, "directory with the bundled descriptors");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cm->parsed()) return run_cm_degree(descriptor, global);
        if (sec->parsed()) return run_sections(descriptor, class_text, m_range, global);
        if (vol->parsed()) return run_volume(descriptor, class_text, global);
        if (split->parsed()) return run_splitting(descriptor, class_text, m_single, global);
        if (hn->parsed())
            return run_hn_fraction(profile_text, m_range, genus, threshold_text, with_clt,
                                   with_chebyshev, global);
        if (hnspec->parsed()) return run_hn_spectrum(profile_text, m_single, genus, global);
        if (symf->parsed()) return run_sym_fraction(degrees_text, m_range, threshold_text, global);
        if (del->parsed()) return run_delta(model_text, valuation_text, q_range, global);
        if (km->parsed()) return run_km_check(descriptor, s_scale, global);
        if (nef->parsed()) return run_nef_check(descriptor, class_text, global);
        if (bounds->parsed())
            return run_bounds(vol_text, dim_x, fiber_vol_text, alpha_text, delta_text, n_dim,
                              global);
        if (plane->parsed())
            return run_plane_system(degree, point_mult, curve_degree, curve_mult, global);
        if (repro->parsed()) return run_reproduce(data_dir, global);
    } catch (const consistency_error& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
