#include "tsim/predicate.hpp"

#include <stdexcept>

namespace tsim {

// ============================================================================
// Construction
// ============================================================================

PredPtr Pred::mk_true() {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::True;
    return p;
}

PredPtr Pred::mk_false() {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::False;
    return p;
}

PredPtr Pred::mk_prop(std::string name) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::Prop;
    p->prop = std::move(name);
    return p;
}

PredPtr Pred::mk_atom(std::string x, CmpOp op, std::int64_t c) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::Atom;
    p->lhs = std::move(x);
    p->op = op;
    p->constant = c;
    return p;
}

PredPtr Pred::mk_diff(std::string x, std::string y, CmpOp op, std::int64_t c) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::Atom;
    p->lhs = std::move(x);
    p->rhs_var = std::move(y);
    p->op = op;
    p->constant = c;
    return p;
}

PredPtr Pred::mk_not(PredPtr p) {
    auto q = std::make_shared<Pred>();
    q->kind = Kind::Not;
    q->a = std::move(p);
    return q;
}

PredPtr Pred::mk_and(PredPtr a, PredPtr b) {
    auto q = std::make_shared<Pred>();
    q->kind = Kind::And;
    q->a = std::move(a);
    q->b = std::move(b);
    return q;
}

PredPtr Pred::mk_or(PredPtr a, PredPtr b) {
    auto q = std::make_shared<Pred>();
    q->kind = Kind::Or;
    q->a = std::move(a);
    q->b = std::move(b);
    return q;
}

// ============================================================================
// Compilation
// ============================================================================

namespace {

// One conjunct x - y ~ c as a single-cell set. Equality becomes the two
// inequalities; the complemented forms are handled by the caller flipping op.
SymbolicSet atom_set(const UniversePtr& u, std::size_t i, std::size_t j,
                     CmpOp op, std::int64_t c) {
    Zone z = Zone::universe(u);
    switch (op) {
        case CmpOp::Le:
            z.constrain(i, j, Bound::weak(c));
            break;
        case CmpOp::Lt:
            z.constrain(i, j, Bound::strictly(c));
            break;
        case CmpOp::Ge:
            z.constrain(j, i, Bound::weak(-c));
            break;
        case CmpOp::Gt:
            z.constrain(j, i, Bound::strictly(-c));
            break;
        case CmpOp::Eq:
            z.constrain(i, j, Bound::weak(c));
            z.constrain(j, i, Bound::weak(-c));
            break;
    }
    return SymbolicSet::of_zone(u, std::move(z));
}

SymbolicSet compile_rec(const PredPtr& p, const UniversePtr& u, bool neg) {
    switch (p->kind) {
        case Pred::Kind::True:
            return neg ? SymbolicSet::bottom(u) : SymbolicSet::top(u);
        case Pred::Kind::False:
            return neg ? SymbolicSet::top(u) : SymbolicSet::bottom(u);
        case Pred::Kind::Prop: {
            Cube c(u);
            c.set(u->require_prop(p->prop), !neg);
            return SymbolicSet::of_cell({std::move(c), Zone::universe(u)});
        }
        case Pred::Kind::Atom: {
            std::size_t i = u->require_var(p->lhs);
            std::size_t j =
                p->rhs_var.empty() ? 0 : u->require_var(p->rhs_var);
            if (!neg)
                return atom_set(u, i, j, p->op, p->constant);
            switch (p->op) {
                case CmpOp::Le:
                    return atom_set(u, i, j, CmpOp::Gt, p->constant);
                case CmpOp::Lt:
                    return atom_set(u, i, j, CmpOp::Ge, p->constant);
                case CmpOp::Ge:
                    return atom_set(u, i, j, CmpOp::Lt, p->constant);
                case CmpOp::Gt:
                    return atom_set(u, i, j, CmpOp::Le, p->constant);
                case CmpOp::Eq: {
                    SymbolicSet s = atom_set(u, i, j, CmpOp::Lt, p->constant);
                    s.union_with(atom_set(u, i, j, CmpOp::Gt, p->constant));
                    return s;
                }
            }
            throw std::logic_error("unreachable");
        }
        case Pred::Kind::Not:
            return compile_rec(p->a, u, !neg);
        case Pred::Kind::And: {
            SymbolicSet sa = compile_rec(p->a, u, neg);
            SymbolicSet sb = compile_rec(p->b, u, neg);
            if (neg) {
                sa.union_with(sb);
                return sa;
            }
            return sa.intersect(sb);
        }
        case Pred::Kind::Or: {
            SymbolicSet sa = compile_rec(p->a, u, neg);
            SymbolicSet sb = compile_rec(p->b, u, neg);
            if (neg) return sa.intersect(sb);
            sa.union_with(sb);
            return sa;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SymbolicSet compile(const PredPtr& p, const UniversePtr& u) {
    SymbolicSet s = compile_rec(p, u, false);
    s.reduce();
    return s;
}

// ============================================================================
// Queries
// ============================================================================

std::int64_t max_constant(const PredPtr& p) {
    switch (p->kind) {
        case Pred::Kind::Atom:
            return p->constant < 0 ? -p->constant : p->constant;
        case Pred::Kind::Not:
            return max_constant(p->a);
        case Pred::Kind::And:
        case Pred::Kind::Or:
            return std::max(max_constant(p->a), max_constant(p->b));
        default:
            return 0;
    }
}

bool eval(const PredPtr& p,
          const std::function<bool(const std::string&)>& prop_val,
          const std::function<Rational(const std::string&)>& clock_val) {
    auto value = [&](const std::string& name) -> Rational {
        if (name == "0") return Rational(0);
        return clock_val(name);
    };
    switch (p->kind) {
        case Pred::Kind::True:
            return true;
        case Pred::Kind::False:
            return false;
        case Pred::Kind::Prop:
            return prop_val(p->prop);
        case Pred::Kind::Atom: {
            Rational d = value(p->lhs);
            if (!p->rhs_var.empty()) d = d - value(p->rhs_var);
            Rational c(p->constant);
            switch (p->op) {
                case CmpOp::Lt: return d < c;
                case CmpOp::Le: return d <= c;
                case CmpOp::Eq: return d == c;
                case CmpOp::Ge: return d >= c;
                case CmpOp::Gt: return d > c;
            }
            throw std::logic_error("unreachable");
        }
        case Pred::Kind::Not:
            return !eval(p->a, prop_val, clock_val);
        case Pred::Kind::And:
            return eval(p->a, prop_val, clock_val) &&
                   eval(p->b, prop_val, clock_val);
        case Pred::Kind::Or:
            return eval(p->a, prop_val, clock_val) ||
                   eval(p->b, prop_val, clock_val);
    }
    throw std::logic_error("unreachable");
}

void collect_names(const PredPtr& p, std::set<std::string>& props,
                   std::set<std::string>& clocks) {
    switch (p->kind) {
        case Pred::Kind::Prop:
            props.insert(p->prop);
            return;
        case Pred::Kind::Atom:
            if (p->lhs != "0") clocks.insert(p->lhs);
            if (!p->rhs_var.empty() && p->rhs_var != "0")
                clocks.insert(p->rhs_var);
            return;
        case Pred::Kind::Not:
            collect_names(p->a, props, clocks);
            return;
        case Pred::Kind::And:
        case Pred::Kind::Or:
            collect_names(p->a, props, clocks);
            collect_names(p->b, props, clocks);
            return;
        default:
            return;
    }
}

bool equal(const PredPtr& a, const PredPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
            return true;
        case Pred::Kind::Prop:
            return a->prop == b->prop;
        case Pred::Kind::Atom:
            return a->lhs == b->lhs && a->rhs_var == b->rhs_var &&
                   a->op == b->op && a->constant == b->constant;
        case Pred::Kind::Not:
            return equal(a->a, b->a);
        case Pred::Kind::And:
        case Pred::Kind::Or:
            return equal(a->a, b->a) && equal(a->b, b->b);
    }
    return false;
}

// ============================================================================
// Rewriting
// ============================================================================

PredPtr rename(const PredPtr& p,
               const std::map<std::string, std::string>& clock_map,
               const std::map<std::string, std::string>& prop_map) {
    auto mapped = [](const std::map<std::string, std::string>& m,
                     const std::string& name) {
        auto it = m.find(name);
        return it == m.end() ? name : it->second;
    };
    switch (p->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
            return p;
        case Pred::Kind::Prop:
            return Pred::mk_prop(mapped(prop_map, p->prop));
        case Pred::Kind::Atom: {
            auto q = std::make_shared<Pred>(*p);
            q->lhs = mapped(clock_map, p->lhs);
            if (!p->rhs_var.empty())
                q->rhs_var = mapped(clock_map, p->rhs_var);
            return q;
        }
        case Pred::Kind::Not:
            return Pred::mk_not(rename(p->a, clock_map, prop_map));
        case Pred::Kind::And:
            return Pred::mk_and(rename(p->a, clock_map, prop_map),
                                rename(p->b, clock_map, prop_map));
        case Pred::Kind::Or:
            return Pred::mk_or(rename(p->a, clock_map, prop_map),
                               rename(p->b, clock_map, prop_map));
    }
    throw std::logic_error("unreachable");
}

PredPtr scale(const PredPtr& p, const Rational& factor) {
    switch (p->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False:
        case Pred::Kind::Prop:
            return p;
        case Pred::Kind::Atom: {
            Rational c = Rational(p->constant) * factor;
            if (!c.is_integer())
                throw std::invalid_argument(
                    "scale: constant " + std::to_string(p->constant) +
                    " does not stay integral under factor " +
                    factor.to_string());
            auto q = std::make_shared<Pred>(*p);
            q->constant = c.num;
            return q;
        }
        case Pred::Kind::Not:
            return Pred::mk_not(scale(p->a, factor));
        case Pred::Kind::And:
            return Pred::mk_and(scale(p->a, factor), scale(p->b, factor));
        case Pred::Kind::Or:
            return Pred::mk_or(scale(p->a, factor), scale(p->b, factor));
    }
    throw std::logic_error("unreachable");
}

// ============================================================================
// Printing
// ============================================================================

namespace {

const char* op_str(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

// Precedence: 0 = or, 1 = and, 2 = not / leaf.
void print_rec(const PredPtr& p, int parent_prec, std::string& out) {
    switch (p->kind) {
        case Pred::Kind::True:
            out += "true";
            return;
        case Pred::Kind::False:
            out += "false";
            return;
        case Pred::Kind::Prop:
            out += p->prop;
            return;
        case Pred::Kind::Atom:
            out += p->lhs;
            if (!p->rhs_var.empty()) {
                out += " - ";
                out += p->rhs_var;
            }
            out += ' ';
            out += op_str(p->op);
            out += ' ';
            out += std::to_string(p->constant);
            return;
        case Pred::Kind::Not:
            out += '!';
            if (p->a->kind == Pred::Kind::Prop ||
                p->a->kind == Pred::Kind::True ||
                p->a->kind == Pred::Kind::False) {
                print_rec(p->a, 2, out);
            } else {
                out += '(';
                print_rec(p->a, 0, out);
                out += ')';
            }
            return;
        case Pred::Kind::And: {
            bool paren = parent_prec > 1;
            if (paren) out += '(';
            print_rec(p->a, 1, out);
            out += " && ";
            print_rec(p->b, 1, out);
            if (paren) out += ')';
            return;
        }
        case Pred::Kind::Or: {
            bool paren = parent_prec > 0;
            if (paren) out += '(';
            print_rec(p->a, 0, out);
            out += " || ";
            print_rec(p->b, 0, out);
            if (paren) out += ')';
            return;
        }
    }
}

}  // namespace

std::string to_string(const PredPtr& p) {
    std::string out;
    print_rec(p, 0, out);
    return out;
}

}  // namespace tsim
