// rdls: command-line front end for the color transforms, estimators and the
// internal plane coder.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rdls/rdls.hpp"
#include "rdls/report.hpp"

namespace {

using namespace rdls;
using nlohmann::json;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

struct TransformArgs {
  std::string name = "rdgdb";
  std::optional<int> w_dg;
  std::optional<int> w_db;

  void add_to(CLI::App* cmd, const std::vector<std::string>& choices) {
    cmd->add_option("--transform,-t", name, "color transform")
        ->check(CLI::IsMember(choices))
        ->capture_default_str();
    cmd->add_option("--w-dg", w_dg, "RDLS center weight for the Dg slot (power of two, 1..1024)");
    cmd->add_option("--w-db", w_db, "RDLS center weight for the Db slot (power of two, 1..1024)");
  }

  TransformDescriptor descriptor() const {
    if (name == "rdls-rdgdb") {
      if (!w_dg || !w_db) throw UsageError("--transform rdls-rdgdb needs both --w-dg and --w-db");
      if (!FilterSpec::valid_weight(*w_dg) || !FilterSpec::valid_weight(*w_db)) {
        throw UsageError("filter weights must be powers of two in [1, 1024]");
      }
      return TransformDescriptor::rdls_rdgdb(FilterSpec(*w_db), FilterSpec(*w_dg));
    }
    if (w_dg || w_db) throw UsageError("--w-dg/--w-db only apply to --transform rdls-rdgdb");
    if (name == "rdgdb") return TransformDescriptor::rdgdb();
    if (name == "rct") return TransformDescriptor::rct();
    return TransformDescriptor::identity();
  }
};

Metric parse_metric(const std::string& s) { return *metric_from_string(s); }

SelectionMode parse_mode(const std::string& s) {
  return s == "joint" ? SelectionMode::joint : SelectionMode::per_slot;
}

void print_planes(const ColorImage& img) {
  for (std::size_t i = 0; i < 3; ++i) {
    std::printf("%-4s H0 %.4f  H0(MED residual) %.4f\n", std::string(to_string(img.role(i))).c_str(),
                entropy_h0(img.plane(i)), entropy_h0(predict_med(img.plane(i))));
  }
}

void print_selection(const Selection& sel) {
  std::printf("metric %s, mode %s\n", std::string(to_string(sel.metric)).c_str(),
              std::string(to_string(sel.mode)).c_str());
  std::printf("dg slot: %s (%.4f)\n", sel.dg.chosen.label().c_str(), sel.dg.value);
  std::printf("db slot: %s (%.4f)\n", sel.db.chosen.label().c_str(), sel.db.value);
  std::printf("transform: %s\n", sel.descriptor().describe().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible denoising and lifting color transforms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  const unsigned threads = threads_from_env();

  // transform
  auto* transform = app.add_subcommand("transform", "apply a color transform, write a planar file");
  std::string tr_in, tr_out;
  TransformArgs tr_args;
  transform->add_option("input", tr_in, "input PPM")->required();
  transform->add_option("output", tr_out, "output planar file")->required();
  tr_args.add_to(transform, {"rdgdb", "rct", "rdls-rdgdb"});

  // inverse
  auto* inverse = app.add_subcommand("inverse", "invert a planar file back to PPM");
  std::string inv_in, inv_out;
  inverse->add_option("input", inv_in, "input planar file")->required();
  inverse->add_option("output", inv_out, "output PPM")->required();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "entropy estimates for all slot options");
  std::string est_in, est_json;
  bool est_codec = false;
  estimate->add_option("input", est_in, "input PPM")->required();
  estimate->add_option("--json", est_json, "write the JSON report here ('-' for stdout)");
  estimate->add_flag("--codec", est_codec, "also measure internal coder bitrates");

  // select
  auto* select = app.add_subcommand("select", "choose the transform for each slot");
  std::string sel_in, sel_apply, sel_json, sel_metric = "med", sel_mode = "per-slot";
  select->add_option("input", sel_in, "input PPM")->required();
  select->add_option("--metric", sel_metric, "selection metric")
      ->check(CLI::IsMember({"h0", "avg", "med"}))
      ->capture_default_str();
  select->add_option("--mode", sel_mode, "per-slot choice or one family for both slots")
      ->check(CLI::IsMember({"per-slot", "joint"}))
      ->capture_default_str();
  select->add_option("--apply", sel_apply, "write the transformed planar file here");
  select->add_option("--json", sel_json, "write the JSON report here ('-' for stdout)");

  // compress
  auto* compress = app.add_subcommand("compress", "transform and code an image");
  std::string cmp_in, cmp_out, cmp_json, cmp_metric = "med", cmp_mode = "per-slot";
  TransformArgs cmp_args;
  cmp_args.name = "auto";
  compress->add_option("input", cmp_in, "input PPM")->required();
  compress->add_option("output", cmp_out, "output compressed file")->required();
  cmp_args.add_to(compress, {"auto", "rdgdb", "rct", "rdls-rdgdb", "none"});
  compress->add_option("--metric", cmp_metric, "selection metric for --transform auto")
      ->check(CLI::IsMember({"h0", "avg", "med"}))
      ->capture_default_str();
  compress->add_option("--mode", cmp_mode, "selection mode for --transform auto")
      ->check(CLI::IsMember({"per-slot", "joint"}))
      ->capture_default_str();
  compress->add_option("--json", cmp_json, "write the JSON report here ('-' for stdout)");

  // decompress
  auto* decompress = app.add_subcommand("decompress", "decode a compressed file to PPM");
  std::string dec_in, dec_out;
  decompress->add_option("input", dec_in, "input compressed file")->required();
  decompress->add_option("output", dec_out, "output PPM")->required();

  // noise
  auto* noise = app.add_subcommand("noise", "add white Gaussian noise");
  std::string noise_in, noise_out;
  double sigma = 0;
  std::optional<double> sigma_r, sigma_g, sigma_b;
  std::uint64_t noise_seed = 1;
  noise->add_option("input", noise_in, "input PPM")->required();
  noise->add_option("output", noise_out, "output PPM")->required();
  noise->add_option("--sigma", sigma, "standard deviation for all components")->capture_default_str();
  noise->add_option("--sigma-r", sigma_r, "standard deviation for R");
  noise->add_option("--sigma-g", sigma_g, "standard deviation for G");
  noise->add_option("--sigma-b", sigma_b, "standard deviation for B");
  noise->add_option("--seed", noise_seed, "PRNG seed")->capture_default_str();

  // bayer
  auto* bayer = app.add_subcommand("bayer", "RGGB mosaic PGM to half-resolution PPM");
  std::string bayer_in, bayer_out;
  bayer->add_option("input", bayer_in, "input PGM")->required();
  bayer->add_option("output", bayer_out, "output PPM")->required();

  // reduce3x
  auto* reduce = app.add_subcommand("reduce3x", "average 3x3 blocks");
  std::string red_in, red_out;
  reduce->add_option("input", red_in, "input PPM")->required();
  reduce->add_option("output", red_out, "output PPM")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "write a seeded synthetic scene");
  std::string synth_out;
  int synth_w = 256, synth_h = 256;
  std::uint64_t synth_seed = 1;
  synth->add_option("output", synth_out, "output PPM")->required();
  synth->add_option("--width", synth_w, "width")->check(CLI::Range(1, 1 << 14))->capture_default_str();
  synth->add_option("--height", synth_h, "height")->check(CLI::Range(1, 1 << 14))->capture_default_str();
  synth->add_option("--seed", synth_seed, "scene seed")->capture_default_str();

  // series
  auto* series = app.add_subcommand("series", "noise sweep, per-component bitrates as CSV");
  std::string ser_in, ser_out = "-";
  int ser_size = 256;
  std::uint64_t ser_scene_seed = 1, ser_seed = 1;
  series->add_option("input", ser_in, "input PPM (default: synthetic scene)");
  series->add_option("--out,-o", ser_out, "CSV output ('-' for stdout)")->capture_default_str();
  series->add_option("--size", ser_size, "synthetic scene size")->check(CLI::Range(1, 1 << 14))
      ->capture_default_str();
  series->add_option("--scene-seed", ser_scene_seed, "synthetic scene seed")->capture_default_str();
  series->add_option("--seed", ser_seed, "noise seed, the same at every sigma")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*transform) {
      const TransformDescriptor d = tr_args.descriptor();
      const ColorImage out = forward_transform(read_ppm(tr_in), d);
      write_planar(out, d, tr_out);
      std::printf("transform: %s\n", d.describe().c_str());
      print_planes(out);
    } else if (*inverse) {
      const auto [img, d] = read_planar(inv_in);
      write_ppm(inverse_transform(img, d), inv_out);
    } else if (*estimate) {
      const ColorImage img = read_ppm(est_in);
      const EstimateReport rep =
          est_codec ? estimate_options_with_codec(img, threads) : estimate_options(img, {false, threads});
      std::printf("%-11s %9s %9s %9s %9s %9s %9s\n", "option", "dg H0", "dg AVG", "dg MED", "db H0",
                  "db AVG", "db MED");
      for (std::size_t i = 0; i < rep.dg.size(); ++i) {
        std::printf("%-11s %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f\n", rep.dg[i].option.label().c_str(),
                    rep.dg[i].h0, rep.dg[i].h0_pavg, rep.dg[i].h0_pmed, rep.db[i].h0,
                    rep.db[i].h0_pavg, rep.db[i].h0_pmed);
      }
      if (!est_json.empty()) {
        json j = report_header("estimate", est_in, img.width(), img.height());
        j["estimates"] = estimate_json(rep);
        write_json(est_json, j);
      }
    } else if (*select) {
      const ColorImage img = read_ppm(sel_in);
      EstimateOptions opts;
      opts.threads = threads;
      const EstimateReport rep = estimate_options(img, opts);
      const Selection sel = select_from_report(rep, parse_metric(sel_metric), parse_mode(sel_mode));
      print_selection(sel);
      if (!sel_apply.empty()) {
        const auto [out, d] = apply_selection(img, sel);
        write_planar(out, d, sel_apply);
      }
      if (!sel_json.empty()) {
        json j = report_header("select", sel_in, img.width(), img.height());
        j["selection"] = selection_json(sel);
        j["alternatives"] = {
            {"per-slot", selection_json(select_from_report(rep, sel.metric, SelectionMode::per_slot))},
            {"joint", selection_json(select_from_report(rep, sel.metric, SelectionMode::joint))}};
        write_json(sel_json, j);
      }
    } else if (*compress) {
      const ColorImage img = read_ppm(cmp_in);
      CompressResult res;
      if (cmp_args.name == "auto") {
        if (cmp_args.w_dg || cmp_args.w_db) {
          throw UsageError("--w-dg/--w-db only apply to --transform rdls-rdgdb");
        }
        res = compress_auto(img, parse_metric(cmp_metric), parse_mode(cmp_mode), threads);
      } else {
        res = compress_image(img, cmp_args.descriptor());
      }
      write_file(cmp_out, res.bytes);
      std::printf("transform: %s\n", res.descriptor.describe().c_str());
      const Roles roles = res.descriptor.output_roles();
      for (std::size_t i = 0; i < 3; ++i) {
        std::printf("%-4s %.4f bpp\n", std::string(to_string(roles[i])).c_str(), res.plane_bpp[i]);
      }
      std::printf("total %.4f bpp (%zu bytes)\n", res.total_bpp(), res.bytes.size());
      if (!cmp_json.empty()) {
        json j = report_header("compress", cmp_in, img.width(), img.height());
        j["transform"] = res.descriptor.describe();
        j["plane_bpp"] = res.plane_bpp;
        j["total_bpp"] = res.total_bpp();
        j["bytes"] = res.bytes.size();
        if (res.selection) j["selection"] = selection_json(*res.selection);
        write_json(cmp_json, j);
      }
    } else if (*decompress) {
      const auto data = read_file(dec_in);
      write_ppm(decompress_image(data), dec_out);
    } else if (*noise) {
      const ColorImage img = read_ppm(noise_in);
      write_ppm(add_awgn(img, sigma_r.value_or(sigma), sigma_g.value_or(sigma), sigma_b.value_or(sigma),
                         noise_seed),
                noise_out);
    } else if (*bayer) {
      write_ppm(bayer_rggb_to_rgb(read_pgm(bayer_in)), bayer_out);
    } else if (*reduce) {
      write_ppm(reduce3x(read_ppm(red_in)), red_out);
    } else if (*synth) {
      write_ppm(synthetic_scene(synth_w, synth_h, synth_seed), synth_out);
    } else if (*series) {
      const ColorImage scene =
          ser_in.empty() ? synthetic_scene(ser_size, ser_size, ser_scene_seed) : read_ppm(ser_in);
      write_text(ser_out, series_csv(run_series(scene, kSeriesSigmas, ser_seed, threads)));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
