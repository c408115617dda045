#include "cgsf/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "cgsf/errors.hpp"

namespace cgsf {

CompiledExpr::CompiledExpr(const SmoothExpr& e) {
  std::vector<std::pair<std::string, int>> seen;
  emit(e, seen);
}

int CompiledExpr::emit(const SmoothExpr& e, std::vector<std::pair<std::string, int>>& seen) {
  for (const auto& [k, idx] : seen)
    if (k == e.key()) return idx;
  Instr in{e.op(), e.node().value, e.node().index, {}};
  for (const auto& a : e.args()) in.args.push_back(emit(a, seen));
  tape_.push_back(std::move(in));
  int idx = static_cast<int>(tape_.size()) - 1;
  seen.emplace_back(e.key(), idx);
  return idx;
}

double CompiledExpr::eval(std::span<const double> x, double eps) const {
  return eval_jet(x, eps, -1, 1).c[0];
}

Jet CompiledExpr::eval_jet(std::span<const double> x, double eps, int var, int len) const {
  if (len < 1 || len > Jet::kCapacity) throw PreconditionError("jet length out of range");
  thread_local std::vector<Jet> regs;
  thread_local std::vector<char> varies;
  regs.resize(tape_.size());
  varies.assign(tape_.size(), 0);
  for (std::size_t i = 0; i < tape_.size(); ++i) {
    const Instr& in = tape_[i];
    Jet& r = regs[i];
    switch (in.op) {
      case Op::Const: r = Jet::constant(in.value, len); break;
      case Op::Eps: r = Jet::constant(eps, len); break;
      case Op::EpsCut: r = Jet::constant(eps < in.value ? 1.0 : 0.0, len); break;
      case Op::Var: {
        if (static_cast<std::size_t>(in.index) >= x.size())
          throw PreconditionError("expression uses x" + std::to_string(in.index + 1) + " beyond the point dimension");
        double v = x[in.index];
        varies[i] = in.index == var && len > 1;
        r = varies[i] ? Jet::variable(v, len) : Jet::constant(v, len);
        break;
      }
      case Op::Add: {
        r = regs[in.args[0]];
        varies[i] = varies[in.args[0]];
        for (std::size_t k = 1; k < in.args.size(); ++k) {
          const Jet& b = regs[in.args[k]];
          if (varies[in.args[k]]) {
            r = r + b;
            varies[i] = 1;
          } else {
            r.c[0] += b.c[0];
          }
        }
        break;
      }
      case Op::Mul: {
        r = regs[in.args[0]];
        varies[i] = varies[in.args[0]];
        for (std::size_t k = 1; k < in.args.size(); ++k) {
          const Jet& b = regs[in.args[k]];
          if (!varies[in.args[k]]) {
            r = scale(r, b.c[0]);
          } else if (!varies[i]) {
            r = scale(b, r.c[0]);
            varies[i] = 1;
          } else {
            r = r * b;
          }
        }
        break;
      }
      default: {
        const int a = in.args[0];
        const bool v = varies[a] != 0;
        Jet arg = regs[a];
        if (!v) arg.n = 1;
        switch (in.op) {
          case Op::Pow: r = jet_pow(arg, in.value); break;
          case Op::Exp: r = jet_exp(arg); break;
          case Op::Log: r = jet_log(arg); break;
          case Op::Sin: r = jet_sin(arg); break;
          case Op::Cos: r = jet_cos(arg); break;
          case Op::Tanh: r = jet_tanh(arg); break;
          case Op::Bump: r = jet_primitive(Primitive::Bump, in.index, arg); break;
          case Op::Plateau: r = jet_primitive(Primitive::Plateau, in.index, arg); break;
          case Op::Step: r = jet_primitive(Primitive::Step, in.index, arg); break;
          default: throw PreconditionError("unknown instruction");
        }
        if (!v) r = Jet::constant(r.c[0], len);
        varies[i] = v;
      }
    }
    if (!std::isfinite(r.c[0])) throw EvalDomainError("expression is not finite at the evaluation point");
  }
  return regs.back();
}

}  // namespace cgsf
