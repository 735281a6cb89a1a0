#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mesh.hpp"
#include "octic/certify.hpp"
#include "octic/serialize.hpp"

using namespace octic;

namespace {

enum Exit { kPass = 0, kMathFailure = 1, kUsage = 2 };

struct RunConfig {
  std::string out = "-";
  std::string format = "json";
  std::string params_file;
  std::uint64_t seed = 1;
  int count = 1;
  bool json = false;
  std::string target;
  int resolution = 64;
  double bounds = 3.0;
  int jobs = 1;
  bool verbose = false;
};

// Writes to `path`, or standard output for "-". Returns false on I/O failure.
bool write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream f(path);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f.flush());
}

int cmd_certify(const RunConfig& cfg) {
  OcticParams params = endrass_params();
  if (!cfg.params_file.empty()) {
    std::ifstream f(cfg.params_file);
    if (!f) {
      std::cerr << "cannot read " << cfg.params_file << "\n";
      return kUsage;
    }
    try {
      params = params_from_json(Json::parse(f));
    } catch (const std::exception& e) {
      std::cerr << "invalid parameter file " << cfg.params_file << ": " << e.what() << "\n";
      return kUsage;
    }
  }
  SurfaceCertificate cert = build_certificate(params, cfg.jobs);
  const std::string text = cfg.format == "text" ? certificate_to_text(cert) : to_json(cert).dump(2) + "\n";
  if (!write_output(cfg.out, text)) {
    std::cerr << "cannot write " << cfg.out << "\n";
    return kUsage;
  }
  if (cert.pass) {
    if (cfg.verbose) std::cerr << "certificate passes: " << cert.total << " nodes\n";
    return kPass;
  }
  std::cerr << "certificate fails (" << cert.total << " nodes)\n";
  for (const auto& f : cert.checks)
    if (!f.pass) std::cerr << "  " << f.name << (f.detail.empty() ? "" : ": " + f.detail) << "\n";
  for (const auto& d : cert.diagnostics) std::cerr << "  " << d << "\n";
  return kMathFailure;
}

int cmd_sample(const RunConfig& cfg) {
  bool all_ok = true;
  Json samples = Json::array();
  for (int k = 0; k < cfg.count; ++k) {
    FamilySample s = family_sample_check(cfg.seed + k, cfg.jobs);
    for (const auto& r : s.rejections) std::cerr << "seed " << s.seed << ": rejected " << r << "\n";
    for (const auto& d : s.diagnostics) std::cerr << "seed " << s.seed << ": " << d << "\n";
    all_ok = all_ok && s.ok;
    if (cfg.json)
      samples.push_back(to_json(s));
    else
      std::cout << s.nodes << "\n";
  }
  if (cfg.json) std::cout << samples.dump(2) << "\n";
  return all_ok ? kPass : kMathFailure;
}

int cmd_show(const RunConfig& cfg) {
  const OcticParams p = endrass_params();
  if (cfg.target == "P") {
    std::cout << build_P().to_string() << "\n";
  } else if (cfg.target == "q") {
    std::cout << build_q(p).to_string() << "\n";
  } else if (cfg.target == "F") {
    std::cout << build_F(p).to_string() << "\n";
  } else if (cfg.target == "final-equation") {
    std::cout << build_F(p).scale(QSqrt2(256)).to_string() << "\n";
  } else if (cfg.target == "params") {
    const std::pair<const char*, const QSqrt2*> rows[] = {{"a", &p.a}, {"b", &p.b}, {"c", &p.c},
                                                          {"d", &p.d}, {"e", &p.e}, {"f", &p.f},
                                                          {"g", &p.g}, {"h", &p.h}, {"i", &p.i}};
    for (const auto& [name, v] : rows) std::cout << name << " = " << v->to_string() << "\n";
  } else {
    std::cerr << "unknown target " << cfg.target << "\n";
    return kUsage;
  }
  return kPass;
}

int cmd_render(const RunConfig& cfg) {
  mesh::Mesh m = mesh::render_surface(build_F(endrass_params()), {cfg.resolution, cfg.bounds, cfg.jobs});
  std::ostringstream s;
  mesh::write_obj(s, m);
  if (!write_output(cfg.out, s.str())) {
    std::cerr << "cannot write " << cfg.out << "\n";
    return kUsage;
  }
  if (cfg.verbose) std::cerr << m.vertices.size() << " vertices, " << m.triangles.size() << " triangles\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of the D8-symmetric octic surface with 168 nodes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* certify = app.add_subcommand("certify", "Certify the nodes and write the certificate");
  certify->add_option("--out", cfg.out, "Output file (- for standard output)");
  certify->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  certify->add_option("--params", cfg.params_file, "Parameter file (JSON, same layout as the certificate's params)");

  auto* sample = app.add_subcommand("sample", "Count nodes of random members of the family");
  sample->add_option("--seed", cfg.seed, "First seed");
  sample->add_option("--count", cfg.count, "Number of samples")->check(CLI::PositiveNumber);
  sample->add_flag("--json", cfg.json, "Print the samples as JSON");

  auto* show = app.add_subcommand("show", "Print an exact polynomial or the parameters");
  show->add_option("target", cfg.target, "P, q, F, params or final-equation")
      ->required()
      ->check(CLI::IsMember({"P", "q", "F", "params", "final-equation"}));

  auto* render = app.add_subcommand("render", "Export a mesh of the affine slice w = 1");
  render->add_option("--resolution", cfg.resolution, "Grid cells per axis")->check(CLI::Range(8, 1024));
  render->add_option("--bounds", cfg.bounds, "Half-width of the box")->check(CLI::PositiveNumber);
  render->add_option("--out", cfg.out, "OBJ file (- for standard output)");

  for (auto* sub : {certify, sample, render}) sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256));
  for (auto* sub : {certify, sample, show, render}) sub->add_flag("-v,--verbose", cfg.verbose, "Report progress on standard error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (certify->parsed()) return cmd_certify(cfg);
    if (sample->parsed()) return cmd_sample(cfg);
    if (show->parsed()) return cmd_show(cfg);
    return cmd_render(cfg);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
