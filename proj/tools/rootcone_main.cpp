// Command-line driver.
//
// Every subcommand loads one instance (--file or --builtin), runs a library
// operation and prints a JSON report.  Reports are deterministic for a fixed
// instance and seed, and the seed is echoed in every report.
//
// Exit codes: 0 success (a report with a negative verdict is still success),
// 2 malformed input or usage, 3 invalid instance or unknown name, 4 internal
// enumeration limit, 1 anything unexpected.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootcone/rootcone.hpp"

namespace {

using namespace rootcone;

struct CommonArgs {
  std::string file;
  std::string builtin;
  std::string out;
  std::uint64_t seed = 0;
};

void add_instance_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--file", args.file, "instance file (JSON)");
  cmd->add_option("--builtin", args.builtin, "catalog system name");
  cmd->add_option("--out", args.out, "write the report here instead of stdout");
  cmd->add_option("--seed", args.seed, "PRNG seed")->capture_default_str();
}

Instance load(const CommonArgs& args) {
  if (args.file.empty() == args.builtin.empty())
    throw ParseError("exactly one of --file or --builtin is required");
  if (!args.file.empty()) return load_instance(args.file);
  return builtin_instance(args.builtin);
}

std::vector<Rat> parse_rational_list(const std::string& text) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string piece = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(rat_from_string(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Vec point_arg(const std::string& text, int rank) {
  std::vector<Rat> entries = parse_rational_list(text);
  if (static_cast<int>(entries.size()) != rank)
    throw DomainError("--point has " + std::to_string(entries.size()) +
                      " coordinates, the instance has rank " + std::to_string(rank));
  return Vec(std::move(entries));
}

Covec xi_arg(const std::string& text, int rank) {
  std::vector<Rat> entries = parse_rational_list(text);
  if (static_cast<int>(entries.size()) != rank)
    throw DomainError("--xi has " + std::to_string(entries.size()) +
                      " coordinates, the instance has rank " + std::to_string(rank));
  return Covec(std::move(entries));
}

void emit(const Json& report, const std::string& out) {
  const std::string text = render_report(report);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ParseError("cannot open report path '" + out + "'");
  f << text;
}

Json base_params(const CommonArgs& args) {
  Json p;
  p["seed"] = args.seed;
  return p;
}

int run(int argc, char** argv) {
  CLI::App app{"exact root systems, Weyl groups and cone actions"};
  app.require_subcommand(1);

  CommonArgs args;
  int depth = 3;
  int tile_samples = 100;
  int pixi_samples = 0;
  long cap = 10000;
  std::size_t budget = 1000000;
  int jobs = 1;
  std::string point_text, xi_text, cone_name, action_name;

  CLI::App* c_validate = app.add_subcommand("validate", "check the root system axioms");
  add_instance_flags(c_validate, args);

  CLI::App* c_coxeter = app.add_subcommand("coxeter", "Coxeter matrix of the system");
  add_instance_flags(c_coxeter, args);

  CLI::App* c_growth = app.add_subcommand("growth", "Weyl group growth by word length");
  add_instance_flags(c_growth, args);
  c_growth->add_option("--depth", depth, "maximum word length")->capture_default_str();
  c_growth->add_option("--cap", budget, "element budget")->capture_default_str();

  CLI::App* c_orbit = app.add_subcommand("orbit", "orbit of a point up to a word length");
  add_instance_flags(c_orbit, args);
  c_orbit->add_option("--point", point_text, "comma-separated rational coordinates")
      ->required();
  c_orbit->add_option("--depth", depth, "maximum word length")->capture_default_str();
  c_orbit->add_option("--cap", budget, "element budget")->capture_default_str();

  CLI::App* c_dominant = app.add_subcommand("dominant", "dominance descent of a point");
  add_instance_flags(c_dominant, args);
  c_dominant->add_option("--point", point_text, "comma-separated rational coordinates")
      ->required();
  c_dominant->add_option("--cap", cap, "reflection step budget")->capture_default_str();
  c_dominant->add_option("--xi", xi_text,
                         "optional descent certificate (positive on every E)");

  CLI::App* c_tile = app.add_subcommand(
      "tile", "audit chamber translates: overlaps and sampled coverage");
  add_instance_flags(c_tile, args);
  c_tile->add_option("--cone", cone_name,
                     "base cone name (default: the fundamental chamber)");
  c_tile->add_option("--depth", depth, "translate word length")->capture_default_str();
  c_tile->add_option("--samples", tile_samples, "coverage samples")->capture_default_str();
  c_tile->add_option("--cap", cap, "dominance step budget")->capture_default_str();
  c_tile->add_option("--jobs", jobs, "worker threads for the overlap scan")->capture_default_str();

  CLI::App* c_pixi = app.add_subcommand(
      "pixi", "Looijenga cone of an action, with a polyhedral-type audit");
  add_instance_flags(c_pixi, args);
  c_pixi->add_option("--action", action_name, "action name from the instance");
  c_pixi->add_option("--xi", xi_text, "comma-separated rational coordinates")
      ->required();
  c_pixi->add_option("--depth", depth, "word-ball truncation depth")->capture_default_str();
  c_pixi->add_option("--samples", pixi_samples,
                     "coverage samples; 0 runs the exhaustive audit")->capture_default_str();
  c_pixi->add_option("--cap", budget, "element budget")->capture_default_str();

  CLI::App* c_builtin = app.add_subcommand("builtin", "list the builtin catalog");
  c_builtin->add_option("--out", args.out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (c_builtin->parsed()) {
    Json rep;
    rep["command"] = "builtin";
    rep["params"] = Json::object({{"seed", 0}});
    Json list = Json::array();
    for (const BuiltinInfo& b : builtin_catalog()) {
      Json e;
      e["pattern"] = b.pattern;
      e["example"] = b.example;
      e["description"] = b.description;
      list.push_back(e);
    }
    rep["result"] = list;
    emit(rep, args.out);
    return 0;
  }

  Instance inst = load(args);
  const int rank = inst.system.rank;

  if (c_validate->parsed()) {
    Json rep = report_envelope("validate", inst, base_params(args));
    rep["result"] = json_of(validate(inst.system));
    emit(rep, args.out);
    return 0;
  }

  if (c_coxeter->parsed()) {
    Json rep = report_envelope("coxeter", inst, base_params(args));
    rep["result"] = Json::object({{"matrix", json_of(coxeter_matrix(inst.system))}});
    emit(rep, args.out);
    return 0;
  }

  if (c_growth->parsed()) {
    Json params = base_params(args);
    params["depth"] = depth;
    params["cap"] = budget;
    Json rep = report_envelope("growth", inst, std::move(params));
    rep["result"] = json_of(group_ball(inst.system, depth, budget));
    emit(rep, args.out);
    return 0;
  }

  if (c_orbit->parsed()) {
    Vec p = point_arg(point_text, rank);
    Json params = base_params(args);
    params["point"] = json_of(p);
    params["depth"] = depth;
    params["cap"] = budget;
    Json rep = report_envelope("orbit", inst, std::move(params));
    rep["result"] = json_of(orbit(inst.system, p, depth, budget));
    emit(rep, args.out);
    return 0;
  }

  if (c_dominant->parsed()) {
    Vec p = point_arg(point_text, rank);
    std::optional<Covec> xi;
    if (!xi_text.empty()) xi = xi_arg(xi_text, rank);
    Json params = base_params(args);
    params["point"] = json_of(p);
    params["cap"] = cap;
    if (xi) params["xi"] = json_of(*xi);
    Json rep = report_envelope("dominant", inst, std::move(params));
    rep["result"] = json_of(make_dominant(inst.system, p, xi, cap));
    emit(rep, args.out);
    return 0;
  }

  if (c_tile->parsed()) {
    Cone base = cone_name.empty() ? fundamental_chamber(inst.system)
                                  : [&] {
                                      auto it = inst.cones.find(cone_name);
                                      if (it == inst.cones.end())
                                        throw InvalidInstanceError(
                                            "unknown cone '" + cone_name + "'");
                                      return it->second;
                                    }();
    Json params = base_params(args);
    params["cone"] = cone_name.empty() ? Json("(fundamental chamber)") : Json(cone_name);
    params["depth"] = depth;
    params["samples"] = tile_samples;
    params["cap"] = cap;
    params["jobs"] = jobs;
    Json rep = report_envelope("tile", inst, std::move(params));
    rep["result"] = json_of(
        tile_check(inst.system, base, depth, tile_samples, args.seed, cap, jobs));
    emit(rep, args.out);
    return 0;
  }

  if (c_pixi->parsed()) {
    ConeAction action = action_name.empty() ? reflection_action(inst.system)
                                            : resolve_action(inst, action_name);
    Covec xi = xi_arg(xi_text, rank);
    Json params = base_params(args);
    params["action"] = action_name.empty() ? Json("(reflections)") : Json(action_name);
    params["xi"] = json_of(xi);
    params["depth"] = depth;
    params["samples"] = pixi_samples;
    params["cap"] = budget;
    Json rep = report_envelope("pixi", inst, std::move(params));

    PiXiResult pi = pi_xi(action, xi, depth, budget);
    Json result = json_of(action, pi);
    result["stabilizer_trivial"] = stabilizer_trivial(action, xi, depth, budget);
    if (pixi_samples == 0) {
      BallResult ball = action_ball(action, depth, budget);
      if (ball.closed) {
        result["polyhedral_type"] =
            json_of(action, polyhedral_type_check(action, pi.cone, depth, 0,
                                                  args.seed, budget));
      } else {
        result["polyhedral_type"] = Json::object(
            {{"mode", "skipped"},
             {"reason", "word ball is not closed at this depth; pass --samples"}});
      }
    } else {
      result["polyhedral_type"] =
          json_of(action, polyhedral_type_check(action, pi.cone, depth, pixi_samples,
                                                args.seed, budget));
    }
    rep["result"] = std::move(result);
    emit(rep, args.out);
    return 0;
  }

  throw std::logic_error("no subcommand dispatched");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInstanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
