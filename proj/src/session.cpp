#include "unfree/session.hpp"

#include "unfree/core.hpp"
#include "unfree/print.hpp"

namespace unfree {

Session::Session(bool load_prelude) : env_(make_global_env()) {
  if (load_prelude) load(prelude_source());
}

std::optional<Value> Session::eval_form(const syntax::Expr& form) {
  Value v = eval(form, env_);
  if (form.as<syntax::DefineExpr>()) return std::nullopt;
  return v;
}

void Session::load(std::string_view source) {
  syntax::FormReader reader(source);
  while (auto form = reader.next()) eval_form(**form);
}

void Session::run(std::string_view source, std::ostream& out) {
  syntax::FormReader reader(source);
  while (auto form = reader.next()) {
    if (auto v = eval_form(**form)) {
      print_value(out, *v);
      out << '\n';
    }
  }
}

} // namespace unfree
