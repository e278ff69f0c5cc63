#include "unfree/print.hpp"

#include <sstream>

#include "unfree/core.hpp"

namespace unfree {
namespace {

void print(std::ostream& out, const Value& v, const PrintOptions& opts);

void print_elements(std::ostream& out, const std::vector<ThunkPtr>& xs, const PrintOptions& opts) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << ' ';
    print(out, xs[i]->force(), opts);
  }
}

void print_matcher(std::ostream& out, const UserMatcher& m, const PrintOptions& opts) {
  if (!m.name.empty()) {
    out << m.name;
    return;
  }
  if (!m.origin) {
    out << "#<matcher>";
    return;
  }
  out << '(';
  const Value& f = m.origin->function;
  if (const auto* c = f.get<Closure>()) out << c->name;
  print_elements(out, m.origin->args, opts);
  out << ')';
}

void print(std::ostream& out, const Value& v, const PrintOptions& opts) {
  struct Visitor {
    std::ostream& out;
    const PrintOptions& opts;

    void operator()(const Integer& x) const { out << x.value.str(); }
    void operator()(const Boolean& x) const { out << (x.value ? "#t" : "#f"); }
    void operator()(const Inductive& x) const {
      out << '<' << x.ctor.name();
      print_elements(out, x.args, opts);
      out << '>';
    }
    void operator()(const Tuple& x) const {
      out << '[';
      for (std::size_t i = 0; i < x.elements.size(); ++i) {
        if (i) out << ' ';
        print(out, x.elements[i]->force(), opts);
      }
      out << ']';
    }
    void operator()(const Collection& x) const {
      out << '{';
      StreamPtr s = x.stream;
      for (std::size_t i = 0;; ++i) {
        check_interrupt();
        const auto& cell = s->force();
        if (cell.empty()) break;
        if (i) out << ' ';
        if (i == opts.max_elements) {
          out << "...";
          break;
        }
        print(out, cell.head->force(), opts);
        if (opts.flush) out.flush();
        s = cell.tail;
      }
      out << '}';
    }
    void operator()(const Closure& x) const {
      out << (x.name.empty() ? "#<function>" : "#<function " + x.name + ">");
    }
    void operator()(const Builtin& x) const { out << "#<builtin " << x.name << '>'; }
    void operator()(const PatternFunction& x) const {
      out << (x.name.empty() ? "#<pattern-function>" : "#<pattern-function " + x.name + ">");
    }
    void operator()(const SomethingMatcher&) const { out << "something"; }
    void operator()(const UserMatcher& x) const { print_matcher(out, x, opts); }
  };
  std::visit(Visitor{out, opts}, v.node());
}

} // namespace

void print_value(std::ostream& out, const Value& v, const PrintOptions& opts) { print(out, v, opts); }

std::string to_display(const Value& v, std::size_t max_elements) {
  std::ostringstream out;
  PrintOptions opts;
  opts.max_elements = max_elements;
  print(out, v, opts);
  return out.str();
}

} // namespace unfree
