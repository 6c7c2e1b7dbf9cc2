// Copyright 2026 The cohscat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <thread>

#include "CLI11.hpp"
#include "cohscat/coherence.hpp"
#include "cohscat/errors.hpp"
#include "cohscat/maps.hpp"
#include "cohscat/scan.hpp"
#include "cohscat/search.hpp"
#include "io.hpp"
#include "json.hpp"
#include "validate.hpp"

#ifndef COHSCAT_VERSION
#define COHSCAT_VERSION "0.0.0"
#endif

namespace cohscat::cli {
namespace {

using json = nlohmann::ordered_json;

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }
json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

Header provenance(const RunConfig& cfg) {
  return {{"tool", "cohscat " + tool_version()},
          {"command", std::string(to_string(*cfg.command))},
          {"schema_version", std::to_string(cfg.schema_version)},
          {"seed", std::to_string(cfg.seed)},
          {"config", result_fingerprint(cfg)}};
}

Header with_medium(Header h, const Medium2D& medium) {
  for (auto& kv : medium_metadata(medium)) h.push_back(std::move(kv));
  return h;
}

json header_json(const Header& h) {
  json j = json::object();
  for (const auto& [k, v] : h) j[k] = v;
  return j;
}

void print_header(std::ostream& out, const Header& h) {
  for (const auto& [k, v] : h) out << "# " << k << ": " << v << "\n";
}

int worker_count(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SystemFactorization factorize(const Medium2D& medium, std::ostream& err) {
  SystemFactorization fact = assemble(medium);
  if (fact.ill_conditioned()) {
    err << "warning: interaction matrix condition estimate " << fact.condition_estimate()
        << " exceeds " << kConditionWarning << "\n";
  }
  return fact;
}

EmitterPair emitters(const EmitterSpec& e) {
  return {from_wavelengths(e.r1), from_wavelengths(e.r2), e.u1, e.u2, e.p1, e.p2};
}

GridSpec grid_spec(const GridConfig& g) {
  return {from_wavelengths(Vec2{g.extent.x0, g.extent.y0}), from_wavelengths(g.extent.width),
          from_wavelengths(g.extent.height), g.nx, g.ny};
}

void write_json(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw IoError("write to '" + path + "' failed");
}

int cmd_gen_medium(const RunConfig& cfg, std::ostream& out) {
  const Medium2D medium = build_medium(cfg.medium, cfg.seed);
  const Header h = with_medium(provenance(cfg), medium);
  const std::string path = cfg.out + ".medium.json";
  write_medium(medium, path, h);
  print_header(out, h);
  out << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Medium2D medium = build_medium(cfg.medium, cfg.seed);
  const DiffusionDiagnostics d = diffusion_diagnostics(medium);
  const SystemFactorization fact = factorize(medium, err);
  const Header h = with_medium(provenance(cfg), medium);
  json j;
  j["provenance"] = header_json(h);
  j["sigma_s_lambda"] = to_wavelengths(d.sigma_s);
  j["ell_lambda"] = to_wavelengths(d.ell);
  j["k_ell"] = d.k_ell;
  j["optical_thickness"] = d.optical_thickness;
  j["diffusive"] = d.diffusive;
  j["condition_estimate"] = fact.condition_estimate();
  write_json(cfg.out + ".diagnostics.json", j);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_g2(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Medium2D medium = build_medium(cfg.medium, cfg.seed);
  const SystemFactorization fact = factorize(medium, err);
  const EmitterPair em = emitters(cfg.emitters);
  const Detector da{from_wavelengths(cfg.detectors.ra), cfg.detectors.ea};
  const Detector db{from_wavelengths(cfg.detectors.rb), cfg.detectors.eb};
  const double ts = cfg.classification.tol_super, tsub = cfg.classification.tol_sub;
  const CoherenceReport rep = coherence_report(fact, em, da, db, ts, tsub);
  const ImGreenPair im = im_green_pair(fact, em);
  const EmissionReport emission = classify_emission(em, im, ts, tsub);

  json j;
  j["provenance"] = header_json(with_medium(provenance(cfg), medium));
  j["g2"] = rep.g2;
  j["g2_classification"] = std::string(to_string(rep.classification));
  j["residuals"] = json{{"amplitude", rep.residuals.amplitude},
                        {"phase", rep.residuals.phase},
                        {"subradiance", rep.residuals.subradiance}};
  j["projected_state"] = json{{"c_ge", complex_json(rep.projected.c_ge)},
                              {"c_eg", complex_json(rep.projected.c_eg)}};
  j["big_g2"] = emission.big_g2;
  j["emission_classification"] = std::string(to_string(emission.classification));
  j["im_green"] = json{{"g11", im.g11}, {"g22", im.g22}, {"g12", im.g12}};
  j["p1_integrated"] = p1_integrated(em, im);
  j["p2_integrated"] = p2_integrated(em, im);
  j["power_imbalance"] = emission.power_imbalance;
  j["cdos_deficit"] = emission.cdos_deficit;
  write_json(cfg.out + ".g2.json", j);
  out << j.dump(2) << "\n";
  return kExitOk;
}

void summarize(std::ostream& out, const MapGrid& map) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t arg = 0, missing = 0;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const double v = map.values[i];
    if (std::isnan(v)) {
      ++missing;
      continue;
    }
    lo = std::min(lo, v);
    if (v > hi) {
      hi = v;
      arg = i;
    }
  }
  const Vec2 at = to_wavelengths(map.grid.pixel_center(static_cast<int>(arg % map.grid.nx),
                                                       static_cast<int>(arg / map.grid.nx)));
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: min %.6g, max %.6g at (%.6g, %.6g), missing %zu\n",
                std::string(to_string(map.channel)).c_str(), lo, hi, at.x, at.y, missing);
  out << buf;
}

int cmd_g2_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Medium2D medium = build_medium(cfg.medium, cfg.seed);
  const SystemFactorization fact = factorize(medium, err);
  const EmitterSpec& e = cfg.emitters;
  const MapGrid map = g2_map(fact, {from_wavelengths(e.r1), e.u1, e.p1}, {e.u2, e.p2},
                             grid_spec(cfg.grid), {worker_count(cfg)});
  const MapGrid cls =
      classification_map(map, cfg.classification.tol_super, cfg.classification.tol_sub);
  const Header h = provenance(cfg);
  write_csv(map, cfg.out + ".g2.csv", h);
  write_pgm(map, cfg.out + ".g2.pgm");
  write_mask_pgm(map, cfg.out + ".g2.mask.pgm");
  write_csv(cls, cfg.out + ".class.csv", h);
  write_pgm(cls, cfg.out + ".class.pgm");
  print_header(out, h);
  summarize(out, map);
  out << "wrote " << cfg.out << ".{g2.csv,g2.pgm,g2.mask.pgm,class.csv,class.pgm}\n";
  return kExitOk;
}

int cmd_dos_maps(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Medium2D medium = build_medium(cfg.medium, cfg.seed);
  const SystemFactorization fact = factorize(medium, err);
  const EmitterSpec& e = cfg.emitters;
  const DosMaps maps = dos_maps(fact, from_wavelengths(e.r1), e.u1, e.u2, grid_spec(cfg.grid),
                                {worker_count(cfg)});
  const Header h = provenance(cfg);
  write_csv(maps.ldos, cfg.out + ".ldos.csv", h);
  write_csv(maps.cdos, cfg.out + ".cdos.csv", h);
  print_header(out, h);
  summarize(out, maps.ldos);
  summarize(out, maps.cdos);
  out << "wrote " << cfg.out << ".{ldos.csv,cdos.csv}\n";
  return kExitOk;
}

int cmd_find_detectors(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Medium2D medium = build_medium(cfg.medium, cfg.seed);
  const SystemFactorization fact = factorize(medium, err);
  const SearchConfig& s = cfg.search;
  const Region rect{from_wavelengths(s.rectangle.x0), from_wavelengths(s.rectangle.y0),
                    from_wavelengths(s.rectangle.width), from_wavelengths(s.rectangle.height)};
  const SearchRegion region =
      s.region == "circle"
          ? SearchRegion::make_circle(from_wavelengths(s.center), from_wavelengths(s.radius))
          : SearchRegion::make_rectangle(rect);
  SearchOptions opts;
  opts.coarse = s.coarse;
  opts.e_a = cfg.detectors.ea;
  opts.e_b = cfg.detectors.eb;
  const ExtremalDetectors best =
      find_extremal_detectors(fact, emitters(cfg.emitters), region,
                              s.target == "maximize" ? SearchTarget::maximize : SearchTarget::minimize,
                              opts);
  json j;
  j["provenance"] = header_json(with_medium(provenance(cfg), medium));
  j["target"] = s.target;
  j["ra"] = vec_json(to_wavelengths(best.da.r));
  j["ea"] = vec_json(best.da.e);
  j["rb"] = vec_json(to_wavelengths(best.db.r));
  j["eb"] = vec_json(best.db.e);
  j["g2"] = best.g2;
  j["coarse_g2"] = best.coarse_g2;
  write_json(cfg.out + ".detectors.json", j);
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const std::vector<CheckResult> results =
      run_validation(cfg.validate.samples, cfg.seed, worker_count(cfg));
  int failed = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    failed += r.passed ? 0 : 1;
  }
  out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
  return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

std::string tool_version() { return COHSCAT_VERSION; }

Medium2D build_medium(const MediumSpec& spec, std::uint64_t seed) {
  if (!spec.file.empty()) return read_medium(spec.file);
  const Region r = spec.region;
  double alpha = 1.0;
  if (spec.alpha_bare) {
    alpha = *spec.alpha_bare;
  } else if (spec.n_scatterers > 0) {
    if (!(r.width > 0.0 && r.height > 0.0)) {
      throw GeometryError("medium region must have positive width and height");
    }
    const double area = from_wavelengths(r.width) * from_wavelengths(r.height);
    alpha = alpha_bare_for_k_ell(spec.k_ell, spec.n_scatterers / area, spec.mode);
  }
  Medium2D m = generate_medium(seed, spec.n_scatterers, r, alpha, spec.exclusion_radius, spec.mode,
                               spec.wavelength_nm);
  for (Scatterer& s : m.scatterers) s.position = from_wavelengths(s.position);
  GenerationInfo& g = *m.generation;
  g.region = {from_wavelengths(r.x0), from_wavelengths(r.y0), from_wavelengths(r.width),
              from_wavelengths(r.height)};
  g.exclusion_radius = from_wavelengths(spec.exclusion_radius);
  return m;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.command) throw ConfigError("no command given");
  switch (*cfg.command) {
    case Command::gen_medium: return cmd_gen_medium(cfg, out);
    case Command::diagnose: return cmd_diagnose(cfg, out, err);
    case Command::g2: return cmd_g2(cfg, out, err);
    case Command::g2_map: return cmd_g2_map(cfg, out, err);
    case Command::dos_maps: return cmd_dos_maps(cfg, out, err);
    case Command::find_detectors: return cmd_find_detectors(cfg, out, err);
    case Command::validate: return cmd_validate(cfg, out);
  }
  return kExitConfig;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-emitter photon correlations in 2D coupled-dipole media"};
  app.name("cohscat");
  app.set_version_flag("--version", "cohscat " + tool_version());
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out;
    bool dump = false;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
    CLI::Option* out_opt = nullptr;
  };
  Flags flags;
  const std::pair<Command, const char*> commands[] = {
      {Command::gen_medium, "generate a random medium and save it"},
      {Command::diagnose, "report scattering cross-section, mean free path and k*ell"},
      {Command::g2, "g2 for two detectors and the integrated G2 for one emitter pair"},
      {Command::g2_map, "raster of the integrated G2 as the second emitter scans the grid"},
      {Command::dos_maps, "LDOS and CDOS rasters around the first emitter"},
      {Command::find_detectors, "search detector positions that extremize g2"},
      {Command::validate, "run the invariant suite; exit 0 only if every check passes"}};
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(cmd)), help);
    sub->add_option("--config", flags.config, "JSON config file (lengths in wavelengths)");
    flags.seed_opt = sub->add_option("--seed", flags.seed, "RNG seed for the medium");
    flags.threads_opt = sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)")
                            ->check(CLI::NonNegativeNumber);
    flags.out_opt = sub->add_option("--out", flags.out, "output path prefix");
    sub->add_flag("--dump-config", flags.dump, "print the effective config and exit");
    subs.emplace_back(sub, cmd);
  }

  std::vector<std::string> storage = {"cohscat"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    Command cmd = Command::validate;
    CLI::App* chosen = nullptr;
    for (const auto& [sub, c] : subs) {
      if (sub->parsed()) {
        chosen = sub;
        cmd = c;
      }
    }
    RunConfig cfg = flags.config.empty() ? RunConfig{} : load_config(flags.config);
    if (cfg.command && *cfg.command != cmd) {
      throw ConfigError("config file is for command '" + std::string(to_string(*cfg.command)) +
                        "', not '" + std::string(to_string(cmd)) + "'");
    }
    cfg.command = cmd;
    if (chosen->get_option("--seed")->count() > 0) cfg.seed = flags.seed;
    if (chosen->get_option("--threads")->count() > 0) cfg.threads = flags.threads;
    if (chosen->get_option("--out")->count() > 0) cfg.out = flags.out;
    if (flags.dump) {
      out << serialize_config(cfg);
      return kExitOk;
    }
    return execute(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GeometryError& e) {
    err << "geometry error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const PackingError& e) {
    err << "geometry error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const InvalidInputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateScattererError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    // Singular systems, undefined correlations, domain and order errors.
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cohscat::cli
