// Command-line laboratory driver: zero scanning and import, distribution
// pipelines at zeta zeros, the random-model report, pair correlation, and
// small-ball value statistics. Outputs are content-addressed: every artifact
// embeds the run configuration and input hashes, identical configurations
// reproduce identical bytes, and heavy intermediates are cached on disk.
//
// Exit codes: 0 success, 2 input/usage error, 3 numeric failure, 4 coverage.

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lvdist/arith.hpp"
#include "lvdist/characters.hpp"
#include "lvdist/lfunc.hpp"
#include "lvdist/model.hpp"
#include "lvdist/paircorr.hpp"
#include "lvdist/selberg.hpp"
#include "lvdist/stats.hpp"
#include "lvdist/zeta_zeros.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using lvdist::cplx;
using lvdist::DirichletCharacter;

// ------------------------------------------------------------------ hashing

static std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

static std::uint64_t fnv64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

static std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

// ------------------------------------------------------------------ parsing

static std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

// "lo:hi:step" inclusive grid.
static std::vector<double> parse_grid(const std::string& s, const char* what) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(s.c_str(), "%lg:%lg:%lg", &lo, &hi, &step) != 3 || !(step > 0.0) || hi < lo)
        throw std::invalid_argument(std::string(what) + ": expected lo:hi:step, got '" + s + "'");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double x = lo + step * i;
        if (x > hi + 1e-12 * (1.0 + std::abs(hi))) break;
        out.push_back(x);
    }
    return out;
}

// Complex literals: "1", "1.5i", "1+2i", "0.3-0.7i".
static cplx parse_complex(std::string tok, const char* what) {
    const std::string orig = tok;
    if (tok.empty()) throw std::invalid_argument(std::string(what) + ": empty complex literal");
    if (tok.back() != 'i') {
        std::size_t used = 0;
        const double re = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad complex '" + orig + "'");
        return cplx(re, 0.0);
    }
    tok.pop_back();  // drop the trailing i
    if (tok.empty() || tok == "+" || tok == "-") return cplx(0.0, tok == "-" ? -1.0 : 1.0);
    std::size_t used = 0;
    const double first = std::stod(tok, &used);
    if (used == tok.size()) return cplx(0.0, first);  // pure imaginary
    std::string rest = tok.substr(used);
    if (rest == "+") return cplx(first, 1.0);
    if (rest == "-") return cplx(first, -1.0);
    std::size_t used2 = 0;
    const double im = std::stod(rest, &used2);
    if (used2 != rest.size())
        throw std::invalid_argument(std::string(what) + ": bad complex '" + orig + "'");
    return cplx(first, im);
}

static std::vector<cplx> parse_complex_list(const std::string& s, const char* what) {
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_complex(tok, what));
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

static std::vector<DirichletCharacter> parse_char_list(const std::string& s) {
    std::vector<DirichletCharacter> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(lvdist::parse_character(tok));
    if (out.empty()) throw std::invalid_argument("--chars: empty list");
    return out;
}

// "a-b,c-d" ordinate windows, validated ascending and non-overlapping.
static std::vector<std::pair<double, double>> parse_windows(const std::string& s) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double a = 0, b = 0;
        if (std::sscanf(tok.c_str(), "%lg-%lg", &a, &b) != 2 || !(a < b))
            throw std::invalid_argument("--windows: expected lo-hi, got '" + tok + "'");
        out.emplace_back(a, b);
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].first < out[i - 1].second)
            throw std::invalid_argument("--windows: windows overlap or are out of order");
    if (out.empty()) throw std::invalid_argument("--windows: empty list");
    return out;
}

// ---------------------------------------------------------------- artifacts

struct Ctx {
    std::string out_dir = "artifacts";
    std::string cache_dir = "cache";
    int workers = 0;

    int effective_workers() const {
        return workers > 0 ? workers : int(lvdist::default_workers());
    }
    void prepare() const {
        fs::create_directories(out_dir);
        fs::create_directories(cache_dir);
    }
};

static void progress(const std::string& msg) { std::fprintf(stderr, "[lvdist] %s\n", msg.c_str()); }

static void emit_artifact(const std::string& path) { std::printf("%s\n", path.c_str()); }

// JSON artifact with the run configuration, input hashes, and a content hash
// of everything above it.
static void write_json_artifact(const std::string& path, ordered_json body) {
    const std::string payload = body.dump(2);
    body["content_hash"] = hex64(fnv64(payload));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body.dump(2) << "\n";
}

// CSV artifact with provenance comment lines before the column header.
class CsvArtifact {
  public:
    CsvArtifact(const std::string& path, const ordered_json& config, const std::string& header)
        : f_(std::fopen(path.c_str(), "w")) {
        if (f_ == nullptr) throw std::runtime_error("cannot write " + path);
        std::fprintf(f_, "# config=%s\n", config.dump().c_str());
        std::fprintf(f_, "# config_hash=%s\n", hex64(fnv64(config.dump())).c_str());
        std::fprintf(f_, "%s\n", header.c_str());
    }
    ~CsvArtifact() {
        if (f_ != nullptr) std::fclose(f_);
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            std::fprintf(f_, "%s%.17g", i ? "," : "", vals[i]);
        std::fprintf(f_, "\n");
    }

  private:
    std::FILE* f_;
};

// --------------------------------------------------- L zero list round trip

static void save_l_zeros(const lvdist::LZeroList& z, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_l_zeros: cannot open " + path);
    char buf[64];
    out << "# modulus=" << z.modulus << "\n# label=" << z.label << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", z.sign);
    out << "# sign=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", z.precision_hint);
    out << "# precision=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", z.t_lo);
    out << "# t_lo=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", z.t_hi);
    out << "# t_hi=" << buf << "\n";
    for (double g : z.ordinates) {
        std::snprintf(buf, sizeof buf, "%.17g", g);
        out << buf << "\n";
    }
}

static lvdist::LZeroList load_l_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_l_zeros: cannot open " + path);
    lvdist::LZeroList z;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string val = line.substr(eq + 1);
            if (key == "modulus") z.modulus = std::stoull(val);
            else if (key == "label") z.label = std::stoull(val);
            else if (key == "sign") z.sign = std::stod(val);
            else if (key == "precision") z.precision_hint = std::stod(val);
            else if (key == "t_lo") z.t_lo = std::stod(val);
            else if (key == "t_hi") z.t_hi = std::stod(val);
            continue;
        }
        const double g = std::stod(line);
        if (!z.ordinates.empty() && g <= z.ordinates.back())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": ordinates not strictly increasing");
        z.ordinates.push_back(g);
    }
    if (z.modulus == 0) throw std::runtime_error(path + ": missing modulus header");
    return z;
}

// Scan-or-load an L zero list keyed by its scan configuration.
static lvdist::LZeroList cached_l_zeros(const Ctx& ctx, const DirichletCharacter& chi,
                                        double t_hi, double grid_step) {
    ordered_json cfg;
    cfg["op"] = "lzeros_scan";
    cfg["chi"] = lvdist::character_name(chi);
    cfg["t_hi"] = t_hi;
    cfg["grid_step"] = grid_step;
    const std::string path = ctx.cache_dir + "/lzeros_" + hex64(fnv64(cfg.dump())) + ".txt";
    if (fs::exists(path)) {
        progress("L-zero cache hit: " + path);
        return load_l_zeros(path);
    }
    progress("scanning zeros of L(s, " + lvdist::character_name(chi) + ") up to " +
             std::to_string(t_hi));
    lvdist::LScanOptions opt;
    opt.workers = unsigned(ctx.effective_workers());
    const auto z = lvdist::scan_L_zeros(chi, 0.0, t_hi, grid_step, opt);
    save_l_zeros(z, path);
    return z;
}

// L-value memo shared across commands, persisted per zeros-file/character set.
class PersistentLCache {
  public:
    PersistentLCache(const Ctx& ctx, std::uint64_t key_hash)
        : path_(ctx.cache_dir + "/lvalues_" + hex64(key_hash) + ".csv") {
        if (fs::exists(path_)) {
            cache_ = lvdist::LValueCache::load_csv(path_);
            progress("L-value cache hit: " + path_ + " (" + std::to_string(cache_.size()) +
                     " values)");
        }
    }
    lvdist::LValueCache* get() { return &cache_; }
    void persist() {
        cache_.save_csv(path_);
        progress("L-value cache saved: " + path_);
    }

  private:
    std::string path_;
    lvdist::LValueCache cache_;
};

// ------------------------------------------------------------- zeros command

static int cmd_zeros_scan(const Ctx& ctx, double t_to, double grid_step, const std::string& chi_spec) {
    ctx.prepare();
    ordered_json cfg;
    cfg["op"] = chi_spec.empty() ? "zeros_scan" : "lzeros_scan";
    if (!chi_spec.empty()) cfg["chi"] = chi_spec;
    cfg["t_hi"] = t_to;
    cfg["grid_step"] = grid_step;
    const std::string hash = hex64(fnv64(cfg.dump()));

    if (!chi_spec.empty()) {
        const auto chi = lvdist::parse_character(chi_spec);
        const auto z = cached_l_zeros(ctx, chi, t_to, grid_step);
        const std::string out = ctx.out_dir + "/lzeros_" + hash + ".txt";
        save_l_zeros(z, out);
        progress("found " + std::to_string(z.ordinates.size()) + " ordinates");
        emit_artifact(out);
        return 0;
    }

    const std::string cache_path = ctx.cache_dir + "/zeros_" + hash + ".txt";
    lvdist::ZeroList z;
    if (fs::exists(cache_path)) {
        progress("zero cache hit: " + cache_path);
        z = lvdist::load_zeros(cache_path);
    } else {
        progress("scanning zeta zeros up to " + std::to_string(t_to));
        lvdist::ScanOptions opt;
        opt.workers = unsigned(ctx.effective_workers());
        z = lvdist::scan_zeros(0.0, t_to, grid_step, opt);
        lvdist::save_zeros(z, cache_path);
    }
    const std::string out = ctx.out_dir + "/zeros_" + hash + ".txt";
    lvdist::save_zeros(z, out);
    progress("found " + std::to_string(z.ordinates.size()) + " ordinates");
    emit_artifact(out);
    return 0;
}

static int cmd_zeros_import(const Ctx& ctx, const std::string& file) {
    ctx.prepare();
    const auto z = lvdist::load_zeros(file);  // validates format and ordering
    const std::string out = ctx.out_dir + "/zeros_import_" + hex64(fnv64_file(file)) + ".txt";
    lvdist::save_zeros(z, out);
    progress("imported " + std::to_string(z.ordinates.size()) + " ordinates from " + file);
    emit_artifact(out);
    return 0;
}

// -------------------------------------------------------------- dist command

struct DistArgs {
    std::string zeros_file;
    std::string chars;
    std::string coeffs;
    std::string evaluator = "both";
    std::string mode = "pragmatic";  // pragmatic: X = sqrt(X2); theoretical: X from T
    double X2 = 1e4;
    std::string omegas = "0:2:0.25";
    int bins = 61;
    double range = 4.0;
};

// Sample cache: per-zero values keyed by the build configuration.
static lvdist::Sample cached_sample(const Ctx& ctx, const ordered_json& key,
                                    const lvdist::ZeroList& zeros,
                                    const std::vector<double>& coeffs,
                                    const std::vector<DirichletCharacter>& chis,
                                    lvdist::Evaluator ev, double X) {
    const std::string path = ctx.cache_dir + "/sample_" + hex64(fnv64(key.dump())) + ".csv";
    if (fs::exists(path)) {
        progress("sample cache hit: " + path);
        std::ifstream in(path);
        lvdist::Sample s;
        s.T = zeros.t_hi;
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            double g = 0, v = 0;
            int flag = 0;
            if (std::sscanf(line.c_str(), "%lg,%lg,%d", &g, &v, &flag) != 3)
                throw std::runtime_error(path + ": bad sample line '" + line + "'");
            if (flag)
                s.excluded.push_back({g, "flagged (cached)"});
            else
                s.entries.push_back({g, v});
        }
        return s;
    }
    progress(std::string("building sample (") +
             (ev == lvdist::Evaluator::true_L ? "true L values" : "prime-sum surrogate") + ") at " +
             std::to_string(zeros.ordinates.size()) + " zeros");
    const auto s = lvdist::build_sample(zeros, coeffs, chis, ev, X, ctx.effective_workers());
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f != nullptr) {
        std::fprintf(f, "gamma,value,excluded\n");
        for (const auto& e : s.entries) std::fprintf(f, "%.17g,%.17g,0\n", e.gamma, e.value);
        for (const auto& e : s.excluded) std::fprintf(f, "%.17g,0,1\n", e.gamma);
        std::fclose(f);
    }
    return s;
}

static int cmd_dist(const Ctx& ctx, const DistArgs& a) {
    ctx.prepare();
    const auto zeros = lvdist::load_zeros(a.zeros_file);
    const auto chis = parse_char_list(a.chars);
    const auto coeffs = parse_double_list(a.coeffs, "--coeffs");
    const bool want_true = a.evaluator == "both" || a.evaluator == "true_L";
    const bool want_poly = a.evaluator == "both" || a.evaluator == "selberg_poly";
    if (!want_true && !want_poly)
        throw std::invalid_argument("--evaluator must be true_L, selberg_poly, or both");
    double X = std::sqrt(a.X2);
    if (a.mode == "theoretical") {
        X = lvdist::choose_params(zeros.t_hi, lvdist::ParamMode::theoretical).X;
        progress("theoretical truncation at T=" + std::to_string(zeros.t_hi) +
                 ": X=" + std::to_string(X));
    } else if (a.mode != "pragmatic") {
        throw std::invalid_argument("--mode must be pragmatic or theoretical");
    }
    const auto omega_grid = parse_grid(a.omegas, "--omegas");

    ordered_json cfg;
    cfg["op"] = "dist";
    cfg["zeros"] = a.zeros_file;
    cfg["zeros_hash"] = hex64(fnv64_file(a.zeros_file));
    cfg["chars"] = a.chars;
    cfg["coeffs"] = a.coeffs;
    cfg["evaluator"] = a.evaluator;
    cfg["mode"] = a.mode;
    cfg["X"] = X;
    cfg["omegas"] = a.omegas;
    cfg["bins"] = a.bins;
    cfg["range"] = a.range;
    const std::string hash = hex64(fnv64(cfg.dump()));

    ordered_json report;
    report["config"] = cfg;
    report["n_zeros"] = zeros.ordinates.size();
    report["T"] = zeros.t_hi;

    std::optional<lvdist::Sample> s_true, s_poly;
    if (want_true) {
        ordered_json key = cfg;
        key["sample"] = "true_L";
        key.erase("omegas"); key.erase("bins"); key.erase("range"); key.erase("evaluator");
        s_true = lvdist::standardize(
            cached_sample(ctx, key, zeros, coeffs, chis, lvdist::Evaluator::true_L, X), coeffs);
    }
    if (want_poly) {
        ordered_json key = cfg;
        key["sample"] = "selberg_poly";
        key.erase("omegas"); key.erase("bins"); key.erase("range"); key.erase("evaluator");
        s_poly = lvdist::standardize(
            cached_sample(ctx, key, zeros, coeffs, chis, lvdist::Evaluator::selberg_poly, X),
            coeffs);
    }

    std::vector<std::string> artifacts;
    auto analyze = [&](const lvdist::Sample& s, const std::string& tag) {
        ordered_json part;
        part["n_entries"] = s.entries.size();
        part["n_excluded"] = s.excluded.size();
        part["ks_normal"] = lvdist::ks_normal(s);
        part["prop_pm196"] = lvdist::proportion_in_interval(s, -1.96, 1.96);
        const auto bins = lvdist::histogram(s, -a.range, a.range, std::size_t(a.bins));
        const std::string hist_path = ctx.out_dir + "/dist_hist_" + tag + "_" + hash + ".csv";
        {
            CsvArtifact csv(hist_path, cfg, "bin_lo,bin_hi,count,density");
            for (const auto& b : bins)
                csv.row({b.lo, b.hi, double(b.count), b.density});
        }
        artifacts.push_back(hist_path);
        report[tag] = part;
    };
    if (s_true) analyze(*s_true, "true_L");
    if (s_poly) analyze(*s_poly, "selberg_poly");

    // Characteristic-function grid for whichever pipelines ran.
    {
        const std::string path = ctx.out_dir + "/dist_charfn_" + hash + ".csv";
        std::string header = "omega";
        if (s_true) header += ",re_true,im_true";
        if (s_poly) header += ",re_poly,im_poly";
        header += ",gaussian";
        CsvArtifact csv(path, cfg, header);
        for (double w : omega_grid) {
            std::vector<double> row = {w};
            if (s_true) {
                const cplx v = lvdist::char_fn_empirical(*s_true, w);
                row.push_back(v.real());
                row.push_back(v.imag());
            }
            if (s_poly) {
                const cplx v = lvdist::char_fn_empirical(*s_poly, w);
                row.push_back(v.real());
                row.push_back(v.imag());
            }
            row.push_back(std::exp(-0.5 * w * w));
            csv.row(row);
        }
        artifacts.push_back(path);
    }
    if (s_true && s_poly) {
        ordered_json transfer;
        for (double w : {0.5, 1.0}) {
            const double d =
                std::abs(lvdist::char_fn_empirical(*s_true, w) - lvdist::char_fn_empirical(*s_poly, w));
            transfer[("omega_" + std::to_string(w).substr(0, 3))] = d;
        }
        report["charfn_transfer_gap"] = transfer;
    }

    if (chis.size() >= 2) {
        ordered_json key = cfg;
        key["cache"] = "lvalues";
        PersistentLCache cache(ctx, fnv64(cfg["zeros_hash"].get<std::string>() + a.chars));
        progress("covariance over " + std::to_string(zeros.ordinates.size()) + " zeros");
        const auto cov = lvdist::covariance_matrix(zeros, chis, cache.get(), ctx.effective_workers());
        cache.persist();
        report["covariance"] = {{"n_points", cov.n_points}, {"matrix", cov.matrix}};
    }

    const std::string json_path = ctx.out_dir + "/dist_" + hash + ".json";
    write_json_artifact(json_path, report);
    artifacts.push_back(json_path);
    for (const auto& p : artifacts) emit_artifact(p);
    return 0;
}

// ------------------------------------------------------------- model command

struct ModelArgs {
    std::string chars;
    std::string coeffs;
    double X2 = 100.0;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::string omegas = "0:4:0.5";
    double T = 1000.0;
    std::uint64_t K = 0;  // 0 = derived from the prime-reciprocal sum
    int kmax = 4;
};

static int cmd_model(const Ctx& ctx, const ModelArgs& a) {
    ctx.prepare();
    const auto chis = parse_char_list(a.chars);
    const auto coeffs = parse_double_list(a.coeffs, "--coeffs");
    const auto config = lvdist::make_model_config(coeffs, chis, std::sqrt(a.X2), a.seed);
    const auto omega_grid = parse_grid(a.omegas, "--omegas");
    const std::uint64_t K =
        a.K > 0 ? a.K
                : std::max<std::uint64_t>(
                      2, 2 * std::uint64_t(std::pow(lvdist::psi(a.X2), 6.0)));

    ordered_json cfg;
    cfg["op"] = "model";
    cfg["chars"] = a.chars;
    cfg["coeffs"] = a.coeffs;
    cfg["X2"] = a.X2;
    cfg["samples"] = a.samples;
    cfg["seed"] = a.seed;
    cfg["omegas"] = a.omegas;
    cfg["T"] = a.T;
    cfg["K"] = K;
    cfg["kmax"] = a.kmax;
    const std::string hash = hex64(fnv64(cfg.dump()));

    ordered_json report;
    report["config"] = cfg;
    const double psi_l = lvdist::psi_L(config);
    report["psi_L"] = psi_l;

    progress("drawing " + std::to_string(a.samples) + " model samples");
    const auto samples = lvdist::sample_P_L(config, a.samples, ctx.effective_workers());

    ordered_json moments = ordered_json::array();
    for (int k = 1; k <= a.kmax; ++k) {
        ordered_json m;
        m["k"] = k;
        try {
            m["exact"] = lvdist::exact_moment(k, config);
        } catch (const std::invalid_argument& e) {
            m["exact"] = nullptr;
            m["refusal"] = e.what();
            progress("exact moment k=" + std::to_string(k) + " refused: " + e.what());
        }
        lvdist::neumaier_sum acc, acc2;
        for (cplx v : samples) {
            const double y = std::pow(v.real(), k);
            acc.add(y);
            acc2.add(y * y);
        }
        const double mean = acc.value() / double(a.samples);
        const double var = acc2.value() / double(a.samples) - mean * mean;
        m["mc"] = mean;
        m["mc_se"] = std::sqrt(std::max(0.0, var) / double(a.samples));
        moments.push_back(m);
    }
    report["moments"] = moments;

    ordered_json charfn = ordered_json::array();
    ordered_json secondary = ordered_json::array();
    double max_imag_sigma = 0.0;
    for (double w : omega_grid) {
        const auto mc = lvdist::mc_char_fn(w, config, std::max<std::uint64_t>(1000, a.samples),
                                           ctx.effective_workers());
        ordered_json row;
        row["omega"] = w;
        row["model"] = lvdist::char_fn_model(w, config);
        row["mc"] = mc.estimate;
        row["mc_se"] = mc.std_error;
        row["gaussian"] = std::exp(-0.25 * w * w * psi_l);
        charfn.push_back(row);
        if (mc.imag_std_error > 0.0)
            max_imag_sigma = std::max(max_imag_sigma, std::abs(mc.imag_mean) / mc.imag_std_error);

        ordered_json srow;
        srow["omega"] = w;
        srow["value"] = lvdist::secondary_term(w, config, a.T, K);
        secondary.push_back(srow);
    }
    report["char_fn"] = charfn;
    report["secondary_term"] = secondary;
    report["mc_diagnostics"] = {{"max_imag_mean_sigmas", max_imag_sigma},
                                {"n_samples", a.samples}};

    const std::string path = ctx.out_dir + "/model_" + hash + ".json";
    write_json_artifact(path, report);
    emit_artifact(path);
    return 0;
}

// ---------------------------------------------------------- paircorr command

struct PairArgs {
    std::string zeros_file;
    std::string chi;
    std::string lzeros_file;
    double T = 0.0;  // 0: top of the zeta list
    std::string alphas = "0:2:0.1";
    double delta = 1.0;
    std::string epsilons = "0.25,0.5,1.0";
    double grid_step = 0.02;
};

static int cmd_paircorr(const Ctx& ctx, const PairArgs& a) {
    ctx.prepare();
    const auto zeros = lvdist::load_zeros(a.zeros_file);
    const auto chi = lvdist::parse_character(a.chi);
    const double T = a.T > 0.0 ? a.T : zeros.t_hi;
    const auto alpha_grid = parse_grid(a.alphas, "--alphas");
    const auto eps_list = parse_double_list(a.epsilons, "--epsilons");
    double eps_max = 0.0;
    for (double e : eps_list) eps_max = std::max(eps_max, e);
    const double margin = eps_max / std::log(T) + 1.0;

    lvdist::LZeroList lzeros;
    if (!a.lzeros_file.empty()) {
        lzeros = load_l_zeros(a.lzeros_file);
    } else {
        lzeros = cached_l_zeros(ctx, chi, T + margin, a.grid_step);
    }

    ordered_json cfg;
    cfg["op"] = "paircorr";
    cfg["zeros"] = a.zeros_file;
    cfg["zeros_hash"] = hex64(fnv64_file(a.zeros_file));
    cfg["chi"] = a.chi;
    cfg["T"] = T;
    cfg["alphas"] = a.alphas;
    cfg["delta"] = a.delta;
    cfg["epsilons"] = a.epsilons;
    const std::string hash = hex64(fnv64(cfg.dump()));

    progress("pair correlation on " + std::to_string(alpha_grid.size()) + " grid points");
    const auto result = lvdist::pair_correlation(alpha_grid, T, zeros, lzeros);

    const std::string alpha_path = ctx.out_dir + "/paircorr_alpha_" + hash + ".csv";
    {
        CsvArtifact csv(alpha_path, cfg, "alpha,value");
        for (std::size_t i = 0; i < result.alpha_grid.size(); ++i)
            csv.row({result.alpha_grid[i], result.values[i]});
    }

    const std::string h0_path = ctx.out_dir + "/paircorr_h0_" + hash + ".csv";
    {
        CsvArtifact csv(h0_path, cfg, "epsilon,proportion");
        for (double e : eps_list) csv.row({e, lvdist::h0_proportion(e, T, zeros, lzeros)});
    }

    ordered_json report;
    report["config"] = cfg;
    report["n_zeta_zeros"] = zeros.ordinates.size();
    report["n_l_zeros"] = lzeros.ordinates.size();
    const double kernel = lvdist::sinc_kernel_sum(a.delta, T, zeros, lzeros);
    const auto close = lvdist::close_pair_count(a.delta, T, zeros, lzeros);
    report["sinc"] = {{"delta", a.delta},
                      {"kernel_sum", kernel},
                      {"ratio_to_scale", lvdist::sinc_kernel_ratio(a.delta, T, zeros, lzeros)},
                      {"close_pairs", close},
                      {"chain_inequality_ok", 0.9 * double(close) <= kernel}};
    report["truncation_bound"] = lvdist::f_alpha_truncation_bound(T, zeros, lzeros);

    const std::string json_path = ctx.out_dir + "/paircorr_" + hash + ".json";
    write_json_artifact(json_path, report);
    emit_artifact(alpha_path);
    emit_artifact(h0_path);
    emit_artifact(json_path);
    return 0;
}

// ----------------------------------------------------------- avalues command

struct AValueArgs {
    std::string zeros_file;
    std::string chars;
    std::string coeffs;
    std::string a_value = "0";
    std::string deltas = "0.3,0.1,0.03,0.01";
    std::string windows;  // ordinate ranges; empty = split the list in half
};

static int cmd_avalues(const Ctx& ctx, const AValueArgs& a) {
    ctx.prepare();
    const auto zeros = lvdist::load_zeros(a.zeros_file);
    const auto chis = parse_char_list(a.chars);
    const auto coeffs = parse_complex_list(a.coeffs, "--coeffs");
    const cplx target = parse_complex(a.a_value, "--a");
    const auto deltas = parse_double_list(a.deltas, "--deltas");

    std::vector<std::pair<double, double>> windows;
    if (!a.windows.empty()) {
        windows = parse_windows(a.windows);
    } else {
        const auto& g = zeros.ordinates;
        if (g.size() < 2) throw std::invalid_argument("avalues: need at least 2 zeros");
        const double mid = g[g.size() / 2 - 1];
        windows = {{0.0, mid}, {mid, zeros.t_hi}};
    }

    ordered_json cfg;
    cfg["op"] = "avalues";
    cfg["zeros"] = a.zeros_file;
    cfg["zeros_hash"] = hex64(fnv64_file(a.zeros_file));
    cfg["chars"] = a.chars;
    cfg["coeffs"] = a.coeffs;
    cfg["a"] = a.a_value;
    cfg["deltas"] = a.deltas;
    {
        ordered_json w = ordered_json::array();
        for (const auto& win : windows) w.push_back({win.first, win.second});
        cfg["windows"] = w;
    }
    const std::string hash = hex64(fnv64(cfg.dump()));

    PersistentLCache cache(ctx, fnv64(cfg["zeros_hash"].get<std::string>() + a.chars));
    progress("small-ball proportions over " + std::to_string(zeros.ordinates.size()) + " zeros");
    const auto rep = lvdist::avalue_proportion(zeros, coeffs, chis, target, deltas, windows,
                                               cache.get(), ctx.effective_workers());
    cache.persist();

    ordered_json report;
    report["config"] = cfg;
    report["a"] = {target.real(), target.imag()};
    report["delta_grid"] = rep.delta_grid;
    {
        ordered_json w = ordered_json::array();
        for (std::size_t i = 0; i < rep.windows.size(); ++i) {
            ordered_json row;
            row["window"] = {rep.windows[i].first, rep.windows[i].second};
            row["n_zeros"] = rep.window_totals[i];
            row["n_failures"] = rep.window_failures[i];
            row["proportions"] = rep.proportions[i];
            w.push_back(row);
        }
        report["windows"] = w;
    }
    {
        const auto& d = rep.dominance;
        double max_resid = 0.0;
        lvdist::neumaier_sum resid_acc;
        for (double r : rep.factorization_residuals) {
            max_resid = std::max(max_resid, std::abs(r));
            resid_acc.add(std::abs(r));
        }
        report["dominance"] = {
            {"threshold", d.threshold},
            {"n_zeros", d.n_zeros},
            {"close_pairs", d.close_pairs},
            {"small_values", d.small_values},
            {"n_clean", d.n_clean},
            {"argmax_counts", d.argmax_counts},
            {"n_ties", d.n_ties},
            {"factorization_residual_max", max_resid},
            {"factorization_residual_mean",
             rep.factorization_residuals.empty()
                 ? 0.0
                 : resid_acc.value() / double(rep.factorization_residuals.size())}};
    }

    const std::string path = ctx.out_dir + "/avalues_" + hash + ".json";
    write_json_artifact(path, report);
    emit_artifact(path);
    return 0;
}

// --------------------------------------------------------------------- main

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for L-value distributions at zeta zeros"};
    app.fallthrough();  // global options may appear after the subcommand
    app.set_config("--config", "", "flat key=value configuration file");
    Ctx ctx;
    app.add_option("--out", ctx.out_dir, "artifact directory")->capture_default_str();
    app.add_option("--cache", ctx.cache_dir, "cache directory")->capture_default_str();
    app.add_option("--workers", ctx.workers, "worker threads (0 = all cores)")
        ->capture_default_str();

    // zeros
    auto* zeros_cmd = app.add_subcommand("zeros", "scan or import zero lists");
    auto* scan_cmd = zeros_cmd->add_subcommand("scan", "locate zeros by sign changes");
    double scan_to = 100.0, scan_step = 0.02;
    std::string scan_chi;
    scan_cmd->add_option("--to", scan_to, "upper ordinate")->required();
    scan_cmd->add_option("--grid-step", scan_step, "scan grid step")->capture_default_str();
    scan_cmd->add_option("--chi", scan_chi, "character m.k (default: zeta)");
    auto* import_cmd = zeros_cmd->add_subcommand("import", "validate and canonicalize a zero file");
    std::string import_file;
    import_cmd->add_option("file", import_file, "zero list file")->required();
    zeros_cmd->require_subcommand(1);

    // dist
    auto* dist_cmd = app.add_subcommand("dist", "distribution of log |L| at zeta zeros");
    DistArgs dist_args;
    dist_cmd->add_option("--zeros", dist_args.zeros_file, "zeta zero file")->required();
    dist_cmd->add_option("--chars", dist_args.chars, "characters m.k,...")->required();
    dist_cmd->add_option("--coeffs", dist_args.coeffs, "real coefficients")->required();
    dist_cmd->add_option("--evaluator", dist_args.evaluator, "true_L | selberg_poly | both")
        ->capture_default_str();
    dist_cmd->add_option("--mode", dist_args.mode,
                         "truncation choice: pragmatic (fixed X2) | theoretical (X from T)")
        ->capture_default_str();
    dist_cmd->add_option("--X2", dist_args.X2, "prime cutoff for the surrogate")
        ->capture_default_str();
    dist_cmd->add_option("--omegas", dist_args.omegas, "characteristic-function grid lo:hi:step")
        ->capture_default_str();
    dist_cmd->add_option("--bins", dist_args.bins, "histogram bins")->capture_default_str();
    dist_cmd->add_option("--range", dist_args.range, "histogram half-range")
        ->capture_default_str();

    // model
    auto* model_cmd = app.add_subcommand("model", "random Euler-product model report");
    ModelArgs model_args;
    model_cmd->add_option("--chars", model_args.chars, "characters m.k,...")->required();
    model_cmd->add_option("--coeffs", model_args.coeffs, "real coefficients")->required();
    model_cmd->add_option("--X2", model_args.X2, "prime cutoff")->capture_default_str();
    model_cmd->add_option("--samples", model_args.samples, "Monte Carlo sample count")
        ->capture_default_str();
    model_cmd->add_option("--seed", model_args.seed, "random seed")->capture_default_str();
    model_cmd->add_option("--omegas", model_args.omegas, "frequency grid lo:hi:step")
        ->capture_default_str();
    model_cmd->add_option("--T", model_args.T, "height for the secondary term")
        ->capture_default_str();
    model_cmd->add_option("--K", model_args.K, "secondary-term order cap (0 = auto)")
        ->capture_default_str();
    model_cmd->add_option("--kmax", model_args.kmax, "largest exact moment order")
        ->capture_default_str();

    // paircorr
    auto* pair_cmd = app.add_subcommand("paircorr", "cross pair correlation with L zeros");
    PairArgs pair_args;
    pair_cmd->add_option("--zeros", pair_args.zeros_file, "zeta zero file")->required();
    pair_cmd->add_option("--chi", pair_args.chi, "character m.k")->required();
    pair_cmd->add_option("--lzeros", pair_args.lzeros_file, "L zero file (default: scan)");
    pair_cmd->add_option("--T", pair_args.T, "window top (0 = zeta list top)")
        ->capture_default_str();
    pair_cmd->add_option("--alphas", pair_args.alphas, "alpha grid lo:hi:step")
        ->capture_default_str();
    pair_cmd->add_option("--delta", pair_args.delta, "sinc kernel delta")->capture_default_str();
    pair_cmd->add_option("--epsilons", pair_args.epsilons, "clustering margins")
        ->capture_default_str();
    pair_cmd->add_option("--grid-step", pair_args.grid_step, "L scan grid step")
        ->capture_default_str();

    // avalues
    auto* av_cmd = app.add_subcommand("avalues", "small-ball proportions of combined L-values");
    AValueArgs av_args;
    av_cmd->add_option("--zeros", av_args.zeros_file, "zeta zero file")->required();
    av_cmd->add_option("--chars", av_args.chars, "characters m.k,...")->required();
    av_cmd->add_option("--coeffs", av_args.coeffs, "complex coefficients, e.g. 1+0i,0.5-1i")
        ->required();
    av_cmd->add_option("--a", av_args.a_value, "target value")->capture_default_str();
    av_cmd->add_option("--deltas", av_args.deltas, "ball radii")->capture_default_str();
    av_cmd->add_option("--windows", av_args.windows,
                       "ordinate windows lo-hi,... (default: halves)");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (scan_cmd->parsed()) return cmd_zeros_scan(ctx, scan_to, scan_step, scan_chi);
        if (import_cmd->parsed()) return cmd_zeros_import(ctx, import_file);
        if (dist_cmd->parsed()) return cmd_dist(ctx, dist_args);
        if (model_cmd->parsed()) return cmd_model(ctx, model_args);
        if (pair_cmd->parsed()) return cmd_paircorr(ctx, pair_args);
        if (av_cmd->parsed()) return cmd_avalues(ctx, av_args);
    } catch (const lvdist::coverage_error& e) {
        std::fprintf(stderr, "coverage error: %s\n", e.what());
        return 4;
    } catch (const lvdist::numeric_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;  // no subcommand dispatched
}
