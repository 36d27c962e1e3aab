// Command-line verifier for graded-ring realization instances.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcp/error.hpp"
#include "gcp/jobs.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw gcp::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

gcp::Window parse_window(const std::string& text) {
  size_t sep = text.find(':');
  if (sep == std::string::npos) sep = text.find("..");
  if (sep == std::string::npos) throw gcp::Error("window must look like '-4:4'");
  gcp::Window w;
  w.min_deg = std::stoi(text.substr(0, sep));
  w.max_deg = std::stoi(text.substr(text[sep] == ':' ? sep + 1 : sep + 2));
  if (w.min_deg > w.max_deg) throw gcp::Error("window is empty");
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcpcheck - graded algebras as Cuntz-Pimsner rings, verified at desk scale"};
  app.require_subcommand(1);

  std::string field_text = "rational";
  std::string window_text;
  int wordlen = 0;
  uint64_t seed = 20240901;
  int count = 100;
  std::string format = "text";
  app.add_option("--field", field_text, "coefficient field: rational or a prime p");
  app.add_option("--window", window_text, "degree window, e.g. -4:4");
  app.add_option("--wordlen", wordlen, "word length cap for generated subrings");
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_option("--count", count, "trial count for fuzz");
  app.add_option("--format", format, "report format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));

  std::vector<std::string> commands = {"check-realization", "check-grcp1", "check-steinberg",
                                       "build-lpa",         "build-groupoid", "decompose"};
  std::map<std::string, std::string> inputs;
  for (const std::string& c : commands) {
    auto* sub = app.add_subcommand(c);
    sub->add_option("input", inputs[c], "input document ('-' for stdin)")->required();
  }
  app.add_subcommand("fuzz", "run the seeded randomized suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    gcp::RunFlags flags;
    if (field_text != "rational") flags.field = gcp::Field::prime(std::stoul(field_text));
    if (!window_text.empty()) flags.window = parse_window(window_text);
    if (wordlen > 0) flags.wordlen = wordlen;
    flags.seed = seed;
    flags.count = count;

    gcp::Report rep;
    if (app.got_subcommand("fuzz")) {
      rep = gcp::run_fuzz(flags);
    } else {
      for (const std::string& c : commands) {
        if (!app.got_subcommand(c)) continue;
        gcp::InputDocument doc = gcp::parse_document(read_input(inputs[c]));
        rep = gcp::run_job(c, doc, flags);
        break;
      }
    }
    std::cout << gcp::emit_report(rep, format);
    return rep.exit_code();
  } catch (const gcp::ParseError& e) {
    std::cerr << "parse error" << (e.line > 0 ? " (line " + std::to_string(e.line) + ")" : "") << ": " << e.what()
              << "\n";
    return 3;
  } catch (const gcp::UnsupportedInstanceError& e) {
    std::cerr << "unsupported instance: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
