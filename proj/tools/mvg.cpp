#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mvg/compare.hpp"
#include "mvg/error.hpp"
#include "mvg/inpaint.hpp"
#include "mvg/io.hpp"
#include "mvg/render.hpp"
#include "mvg/synthetic.hpp"

using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct Options {
    std::string log_path;
    std::size_t threads = 0;

    std::string manifold = "s2";
    std::size_t rows = 64;
    std::size_t cols = 64;
    std::vector<std::size_t> rect;

    std::string input, mask, output;
    std::string a, b;

    mvg::SolverConfig cfg;
    std::string sigma = "auto";
};

std::size_t default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

json layer_json(const mvg::LayerRecord& r) {
    return {{"layer", r.layer},         {"size", r.size},           {"active", r.active},
            {"edges", r.edges},         {"sigma", r.sigma},         {"iterations", r.iterations},
            {"final_change", r.final_change}, {"seconds", r.seconds}};
}

json config_json(const mvg::SolverConfig& c) {
    json j = {{"k", c.k}, {"p", c.p}, {"r", c.r}, {"tau", c.tau}, {"eps", c.eps}, {"max_iter", c.max_iter}};
    j["sigma"] = c.sigma ? json(*c.sigma) : json("auto");
    j["cumulative_active"] = c.cumulative_active;
    j["threads"] = c.threads;
    return j;
}

std::optional<double> parse_sigma(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !(v > 0.0)) throw mvg::ConfigError("--sigma must be a positive number or 'auto', got '" + s + "'");
    return v;
}

void run_generate(const Options& o, json& summary) {
    mvg::MvImage img = [&] {
        if (o.manifold == "s2") return mvg::generate_sphere_image(o.rows, o.cols);
        return mvg::generate_spd_image(o.rows, o.cols);
    }();
    mvg::write_mvi(img, o.output);
    summary["parameters"] = {{"manifold", o.manifold}, {"rows", o.rows}, {"cols", o.cols}, {"output", o.output}};
}

void run_mask(const Options& o, json& summary) {
    const mvg::Mask m = mvg::cut_mask(o.rows, o.cols, o.rect[0], o.rect[1], o.rect[2], o.rect[3]);
    mvg::write_pbm(m, o.output);
    summary["parameters"] = {{"rows", o.rows}, {"cols", o.cols}, {"rect", o.rect}, {"output", o.output}};
}

void run_inpaint(Options o, json& summary) {
    o.cfg.sigma = parse_sigma(o.sigma);
    o.cfg.threads = o.threads;
    summary["parameters"] = config_json(o.cfg);
    summary["parameters"]["input"] = o.input;
    summary["parameters"]["mask"] = o.mask;
    summary["parameters"]["output"] = o.output;
    o.cfg.validate();

    const mvg::MvImage img = mvg::read_mvi(o.input);
    const mvg::Mask mask = mvg::read_pbm(o.mask);
    if (mask.rows() != img.rows() || mask.cols() != img.cols())
        throw mvg::DimensionError("mask is " + std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()) +
                                  ", image is " + std::to_string(img.rows()) + "x" + std::to_string(img.cols()));
    summary["manifold"] = img.manifold().name();
    summary["unknown"] = mask.unknown_count();

    const mvg::InpaintResult res = mvg::inpaint(img, mask, o.cfg);
    json layers = json::array();
    for (const auto& r : res.state.log) layers.push_back(layer_json(r));
    summary["layers"] = std::move(layers);
    mvg::write_mvi(res.image, o.output);
}

void run_render(const Options& o, json& summary) {
    const mvg::MvImage img = mvg::read_mvi(o.input);
    std::optional<mvg::Mask> mask;
    if (!o.mask.empty()) {
        mask = mvg::read_pbm(o.mask);
        if (mask->rows() != img.rows() || mask->cols() != img.cols())
            throw mvg::DimensionError("mask shape does not match the image");
    }
    mvg::render(img, mask ? &*mask : nullptr, o.output);
    summary["parameters"] = {{"input", o.input}, {"mask", o.mask}, {"output", o.output}};
}

void run_compare(const Options& o, json& summary) {
    const mvg::MvImage a = mvg::read_mvi(o.a);
    const mvg::MvImage b = mvg::read_mvi(o.b);
    const mvg::Mask m = mvg::read_pbm(o.mask);
    const mvg::CompareReport r = mvg::compare(a, b, m);
    std::cout << mvg::format_report(r);
    summary["parameters"] = {{"a", o.a}, {"b", o.b}, {"mask", o.mask}};
    summary["report"] = {{"count", r.count}, {"mean_error", r.mean}, {"max_error", r.max}, {"rms_error", r.rms}};
}

void emit_summary(const json& summary, const std::string& log_path) {
    const std::string text = summary.dump(2) + "\n";
    if (log_path.empty()) {
        std::cerr << text;
        return;
    }
    try {
        mvg::write_file(log_path, text);
    } catch (const std::exception& e) {
        std::cerr << "mvg: " << e.what() << "\n" << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    o.threads = default_threads();

    CLI::App app{"Inpainting of manifold-valued images with the graph infinity-Laplacian."};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--log", o.log_path, "Write the JSON run summary here instead of standard error");
    app.add_option("--threads", o.threads, "Worker threads (default: machine parallelism)")
        ->envname("MVG_THREADS")
        ->check(CLI::PositiveNumber);

    auto* gen = app.add_subcommand("generate", "Write a synthetic test image");
    gen->add_option("--manifold", o.manifold, "s2: directional field, spd2: 2x2 s.p.d. field")
        ->check(CLI::IsMember({"s2", "spd2"}))
        ->capture_default_str();
    gen->add_option("--rows", o.rows, "Image rows")->capture_default_str();
    gen->add_option("--cols", o.cols, "Image columns")->capture_default_str();
    gen->add_option("-o,--output", o.output, "Output MVI file")->required();

    auto* msk = app.add_subcommand("mask", "Write a rectangular hole mask (PBM, 1 = unknown)");
    msk->add_option("--rect", o.rect, "Hole as i0,j0,h,w")->required()->delimiter(',')->expected(4);
    msk->add_option("--rows", o.rows, "Mask rows")->capture_default_str();
    msk->add_option("--cols", o.cols, "Mask columns")->capture_default_str();
    msk->add_option("-o,--output", o.output, "Output PBM file")->required();

    auto* inp = app.add_subcommand("inpaint", "Fill the unknown pixels of an image");
    inp->add_option("-i,--input", o.input, "Input MVI file")->required();
    inp->add_option("-m,--mask", o.mask, "PBM mask, 1 = unknown")->required();
    inp->add_option("-o,--output", o.output, "Output MVI file")->required();
    inp->add_option("--k", o.cfg.k, "Neighbors per pixel (reference setting: 25 for S2, 5 or 25 for SPD)")
        ->capture_default_str();
    inp->add_option("--p", o.cfg.p, "Patch radius (reference setting: 12 for S2, 6 for SPD)")->capture_default_str();
    inp->add_option("--r", o.cfg.r, "Search window radius (reference default)")->capture_default_str();
    inp->add_option("--sigma", o.sigma, "Weight scale, or 'auto' for the mean neighbor patch distance")
        ->capture_default_str();
    inp->add_option("--tau", o.cfg.tau, "Euler step size (reference default)")->capture_default_str();
    inp->add_option("--eps", o.cfg.eps, "Relative change stopping threshold (reference default)")
        ->capture_default_str();
    inp->add_option("--max-iter", o.cfg.max_iter, "Iteration cap per layer (reference default)")->capture_default_str();
    inp->add_flag("--cumulative-active", o.cfg.cumulative_active,
                  "Re-solve all filled layers with each new one (default: newest layer only)");

    auto* ren = app.add_subcommand("render", "Draw an image: .ppm for s2, .svg for spd2");
    ren->add_option("-i,--input", o.input, "Input MVI file")->required();
    ren->add_option("-m,--mask", o.mask, "Optional PBM mask; unknown pixels are drawn gray");
    ren->add_option("-o,--output", o.output, "Output .ppm or .svg file")->required();

    auto* cmp = app.add_subcommand("compare", "Geodesic error statistics over the masked pixels");
    cmp->add_option("-a", o.a, "Result MVI file")->required();
    cmp->add_option("-b", o.b, "Reference MVI file")->required();
    cmp->add_option("-m,--mask", o.mask, "PBM mask selecting the pixels to compare")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    json summary = {{"command", command}};
    const auto t0 = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (command == "generate") run_generate(o, summary);
        else if (command == "mask") run_mask(o, summary);
        else if (command == "inpaint") run_inpaint(o, summary);
        else if (command == "render") run_render(o, summary);
        else run_compare(o, summary);
    } catch (const mvg::ConfigError& e) {
        code = kUsage;
        summary["error"] = e.what();
    } catch (const mvg::DataError& e) {
        code = kData;
        summary["error"] = e.what();
    } catch (const mvg::NumericalError& e) {
        code = kNumerical;
        summary["error"] = e.what();
    } catch (const std::exception& e) {
        code = kData;
        summary["error"] = e.what();
    }
    summary["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    summary["exit_code"] = code;
    if (code != kOk) std::cerr << "mvg: " << summary["error"].get<std::string>() << "\n";
    emit_summary(summary, o.log_path);
    return code;
}
