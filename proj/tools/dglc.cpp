// dglc: run operations declared in an object file and print a report.
#include "dgl/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dgl;

int main(int argc, char** argv) {
  CLI::App app{"dg Lie algebra computations from declarative object files"};
  std::string command, file, format = "text", out;
  std::vector<std::string> with;
  RunOptions o;
  int cap = 0, weight = 0, sym = 0, levels = 0, depth = 0;
  bool list = false;

  std::string commands = "run";
  for (const auto& c : command_names()) commands += ", " + c;
  app.add_option("command", command, "one of: " + commands);
  app.add_option("file", file, "object file (JSON); omit to use built-in objects only");
  app.add_option("--with", with, "operation field key=value (repeatable)");
  auto* cap_opt = app.add_option("--cap", cap, "polynomial degree cap for nerve simplices");
  auto* weight_opt = app.add_option("--weight", weight, "weight bound for free Lie and enveloping truncations");
  auto* sym_opt = app.add_option("--sym", sym, "symmetric degree bound for Chevalley coalgebras");
  auto* levels_opt = app.add_option("--levels", levels, "simplicial levels");
  auto* depth_opt = app.add_option("--depth", depth, "stage budget for gauge equivalence");
  app.add_option("--seed", o.seed, "seed for sampled elements");
  app.add_option("--format", format, "text, csv or structured")->check(CLI::IsMember({"text", "csv", "structured", "json"}));
  app.add_option("--out", out, "also write the report to this file");
  app.add_flag("--timing", o.timing, "record wall-clock seconds per operation");
  app.add_flag("--list", list, "list commands and built-in objects");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (list) {
    std::cout << "commands: " << commands << "\nbuilt-in objects:";
    for (const auto& n : builtin_names()) std::cout << " " << n;
    std::cout << "\n";
    return 0;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return 2;
  }
  if (*cap_opt) o.cap = cap;
  if (*weight_opt) o.weight = weight;
  if (*sym_opt) o.sym = sym;
  if (*levels_opt) o.levels = levels;
  if (*depth_opt) o.depth = depth;

  try {
    ObjectFile f = file.empty() ? parse_object_file("{}") : load_object_file(file);
    nlohmann::ordered_json fallback = nlohmann::ordered_json::object();
    for (const auto& kv : with) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ValidationError("--with expects key=value, got '" + kv + "'");
      std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      bool integer = !value.empty() && value.find_first_not_of("-0123456789") == std::string::npos && value != "-";
      if (integer) fallback[key] = std::stoi(value);
      else fallback[key] = value;
    }
    Report r = run_command(f, command, fallback, o, file);
    std::string text = emit(r, *parse_format(format));
    std::cout << text;
    if (!out.empty()) {
      std::ofstream os(out, std::ios::binary);
      if (!os) throw ValidationError("cannot write '" + out + "'");
      os << text;
    }
    return exit_code(r);
  } catch (const ValidationError& e) {
    std::cerr << "dglc: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dglc: internal error: " << e.what() << "\n";
    return 4;
  }
}
