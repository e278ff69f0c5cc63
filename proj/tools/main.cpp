#include <csignal>
#include <iostream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "unfree/cli.hpp"
#include "unfree/core.hpp"

namespace {

extern "C" void on_sigint(int) { unfree::request_interrupt(); }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter for non-linear pattern-matching against unfree data types"};
  std::string file;
  unfree::cli::Options opts;
  std::size_t take = 0;
  bool no_prelude = false;
  app.add_option("file", file, "Source file to run; without one, start a REPL");
  app.add_flag("--trace", opts.trace, "Print each matching-state as it is reduced");
  auto* take_opt = app.add_option("--take", take, "Print only the first N elements of the last result");
  app.add_flag("--no-prelude", no_prelude, "Do not load the standard matchers");
  CLI11_PARSE(app, argc, argv);

  opts.prelude = !no_prelude;
  if (*take_opt) opts.take = take;
  std::signal(SIGINT, on_sigint);

  if (!file.empty()) return unfree::cli::run_file(file, opts, std::cout, std::cerr);
  return unfree::cli::repl(std::cin, std::cout, std::cerr, opts, isatty(STDIN_FILENO) != 0);
}
