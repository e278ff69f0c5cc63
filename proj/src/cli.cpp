#include "unfree/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "unfree/core.hpp"
#include "unfree/engine.hpp"
#include "unfree/error.hpp"
#include "unfree/print.hpp"
#include "unfree/session.hpp"

namespace unfree::cli {
namespace {

class TraceScope {
public:
  TraceScope(bool on, std::ostream& out) : on_(on) {
    if (on_)
      engine::set_trace_hook([&out](const engine::MatchingState& s, int depth) {
        if (depth == 0) out << engine::render_state(s) << '\n';
      });
  }
  ~TraceScope() {
    if (on_) engine::set_trace_hook(nullptr);
  }
  TraceScope(const TraceScope&) = delete;
  TraceScope& operator=(const TraceScope&) = delete;

private:
  bool on_;
};

void print_result(const Value& v, std::size_t take_n, bool limit, std::ostream& out) {
  PrintOptions opts;
  opts.flush = true;
  if (limit && v.is<Collection>()) {
    std::vector<ThunkPtr> items;
    for (Value& x : force_collection_prefix(v, take_n)) items.push_back(Thunk::ready(std::move(x)));
    print_value(out, make_collection(Stream::from(std::move(items))), opts);
  } else {
    print_value(out, v, opts);
  }
  out << '\n';
}

void report(const Error& e, std::ostream& err) { err << "error: " << e.what() << '\n'; }

} // namespace

int run_source(std::string_view source, const Options& opts, std::ostream& out, std::ostream& err) {
  try {
    Session session(opts.prelude);
    TraceScope trace(opts.trace, err);
    std::vector<syntax::ExprPtr> forms = syntax::read_program(source);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      auto v = session.eval_form(*forms[i]);
      if (!v) continue;
      const bool last = i + 1 == forms.size();
      print_result(*v, opts.take.value_or(0), last && opts.take.has_value(), out);
    }
    return 0;
  } catch (const Error& e) {
    out.flush();
    report(e, err);
    return 1;
  }
}

int run_file(const std::filesystem::path& path, const Options& opts, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << path.string() << '\n';
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return run_source(text.str(), opts, out, err);
}

int repl(std::istream& in, std::ostream& out, std::ostream& err, const Options& opts, bool interactive) {
  std::optional<Session> session;
  try {
    session.emplace(opts.prelude);
  } catch (const Error& e) {
    report(e, err);
    return 1;
  }
  TraceScope trace(opts.trace, err);

  std::string buffer;
  std::string line;
  for (;;) {
    if (interactive) out << (buffer.empty() ? "> " : "  ") << std::flush;
    if (!std::getline(in, line)) break;
    buffer += line;
    buffer += '\n';

    syntax::FormReader reader(buffer);
    std::size_t consumed = 0;
    bool incomplete = false;
    for (;;) {
      clear_interrupt();
      std::optional<syntax::ExprPtr> form;
      try {
        form = reader.next();
      } catch (const SyntaxError& e) {
        if (e.incomplete()) {
          incomplete = true;
        } else {
          report(e, err);
          consumed = buffer.size();
        }
        break;
      }
      if (!form) {
        consumed = buffer.size();
        break;
      }
      consumed = reader.offset();
      try {
        if (auto v = session->eval_form(**form)) print_result(*v, 0, false, out);
      } catch (const Interrupted&) {
        out << '\n';
        err << "interrupted\n";
      } catch (const Error& e) {
        out << std::flush;
        report(e, err);
      }
    }
    buffer.erase(0, consumed);
    if (!incomplete && buffer.find_first_not_of(" \t\r\n") == std::string::npos) buffer.clear();
  }
  if (buffer.find_first_not_of(" \t\r\n") != std::string::npos) {
    err << "error: unexpected end of input\n";
    return 1;
  }
  return 0;
}

} // namespace unfree::cli
