#include <hyperaut/json_io.hpp>

namespace hyperaut {

Json to_json(const Form& f) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : f.terms()) {
    Json t;
    t["coeff"] = coeff.get_str();
    t["exps"] = mono.exps;
    terms.push_back(std::move(t));
  }
  Json out;
  out["num_vars"] = f.num_vars();
  out["degree"] = f.degree();
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const Sparsity& s) {
  if (s.infinite) return Json("infinite");
  return Json(s.value);
}

Json to_json(const PosetReport& r) {
  Json out;
  Json rel = Json::array();
  for (auto [i, j] : r.relation) rel.push_back(Json::array({i, j}));
  out["relation"] = std::move(rel);
  out["is_poset"] = r.is_poset;
  out["is_trivial"] = r.is_trivial;
  out["witness"] = r.witness
                       ? Json::array({r.witness->first, r.witness->second})
                       : Json(nullptr);
  return out;
}

const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::not_applicable: return "NotApplicable";
    case ConstraintKind::generalized_triangular: return "GeneralizedTriangular";
    case ConstraintKind::generalized_permutation: return "GeneralizedPermutation";
    case ConstraintKind::simple_form_permutation: return "SimpleFormPermutation";
  }
  return "?";
}

const char* to_string(NotApplicableReason r) {
  switch (r) {
    case NotApplicableReason::sparsity_too_low: return "SparsityTooLow";
    case NotApplicableReason::not_a_poset: return "NotAPoset";
    case NotApplicableReason::hypothesis_out_of_range: return "HypothesisOutOfRange";
  }
  return "?";
}

Json to_json(const AutConstraint& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  if (c.reason) out["reason"] = to_string(*c.reason);
  out["poset"] = to_json(c.poset);
  if (c.decomposition) {
    Json blocks = Json::array();
    for (const auto& b : c.decomposition->blocks) {
      Json jb;
      jb["kind"] = b.kind == SimpleBlock::Kind::klein ? "klein" : "delsarte";
      jb["variables"] = b.variables;
      blocks.push_back(std::move(jb));
    }
    out["decomposition"] = std::move(blocks);
  }
  return out;
}

Json to_json(const PhaseMatrix& g) {
  Json out;
  out["perm"] = g.perm();
  out["modulus"] = g.modulus().get_str();
  Json phases = Json::array();
  for (const Int& p : g.phases()) phases.push_back(p.get_str());
  out["phases"] = std::move(phases);
  return out;
}

Json to_json(const DiagonalGroup& g) {
  Json out;
  Json factors = Json::array();
  for (const Int& f : g.invariant_factors) factors.push_back(f.get_str());
  out["invariant_factors"] = std::move(factors);
  out["order"] = g.order.get_str();
  out["phase_modulus"] = g.modulus.get_str();
  Json gens = Json::array();
  for (const auto& phases : g.generators) {
    Json v = Json::array();
    for (const Int& p : phases) v.push_back(p.get_str());
    gens.push_back(std::move(v));
  }
  out["generators"] = std::move(gens);
  return out;
}

Json to_json(const GroupDescriptor& g) {
  Json structure;
  switch (g.kind) {
    case GroupDescriptor::Kind::cyclic_tower: {
      structure["kind"] = "cyclic_tower";
      Json fs = Json::array();
      for (const Int& f : g.invariant_factors) fs.push_back(f.get_str());
      structure["invariant_factors"] = std::move(fs);
      break;
    }
    case GroupDescriptor::Kind::semidirect_cyclic:
      structure["kind"] = "semidirect_cyclic";
      structure["m"] = g.m.get_str();
      structure["k"] = g.k.get_str();
      break;
    case GroupDescriptor::Kind::diagonal_semidirect_symmetric:
      structure["kind"] = "diagonal_semidirect_symmetric";
      structure["d"] = g.d.get_str();
      structure["power"] = g.power;
      structure["sym_degree"] = g.sym_degree;
      break;
    case GroupDescriptor::Kind::named:
      structure["kind"] = "named";
      switch (g.tag) {
        case GroupDescriptor::NamedTag::psl2_f7: structure["tag"] = "PSL2_F7"; break;
        case GroupDescriptor::NamedTag::psl2_f11: structure["tag"] = "PSL2_F11"; break;
        case GroupDescriptor::NamedTag::sym5: structure["tag"] = "Sym5"; break;
        case GroupDescriptor::NamedTag::elliptic_semidirect:
          structure["tag"] = "EllipticSemidirect";
          break;
        case GroupDescriptor::NamedTag::unknown_infinite:
          structure["tag"] = "UnknownInfinite";
          break;
      }
      break;
  }
  Json out;
  out["structure"] = std::move(structure);
  switch (g.order_kind) {
    case GroupDescriptor::OrderKind::finite: out["order"] = g.order.get_str(); break;
    case GroupDescriptor::OrderKind::infinite: out["order"] = "infinite"; break;
    case GroupDescriptor::OrderKind::unknown: out["order"] = "unknown"; break;
  }
  out["generators"] = Json::array();
  return out;
}

Json to_json(const KleinGeneratorCheck& c) {
  Json out;
  out["sigma_invariant"] = c.sigma_invariant;
  out["sigma_phase"] = c.sigma_phase.get_str();
  out["nu_invariant"] = c.nu_invariant;
  out["nu_phase"] = c.nu_phase.get_str();
  out["sigma_order_ok"] = c.sigma_order_ok;
  out["nu_order_ok"] = c.nu_order_ok;
  out["conjugation_ok"] = c.conjugation_ok;
  out["coprime_branch"] = c.coprime_branch;
  out["coprime_branch_ok"] = c.coprime_branch_ok;
  out["passed"] = c.passed();
  return out;
}

Json to_json(const WagstaffResult& r) {
  Json out;
  out["n"] = r.n;
  out["d"] = r.d;
  out["p"] = r.p.get_str();
  out["n_plus_2_prime"] = r.n_plus_2_prime;
  out["p_primality"] = to_string(r.p_primality);
  out["wagstaff_type"] = r.is_wagstaff_type;
  out["excluded"] = r.excluded;
  out["shown"] = r.shown_in_table() ? r.p.get_str() : "--";
  return out;
}

Json wagstaff_scan_json(int n_max, int d_max,
                        const std::vector<WagstaffResult>& results) {
  Json out;
  out["n_max"] = n_max;
  out["d_max"] = d_max;
  Json cells = Json::array();
  for (const auto& r : results) cells.push_back(to_json(r));
  out["cells"] = std::move(cells);
  return out;
}

Json to_json(const TorelliVerdict& v) {
  Json out;
  out["n"] = v.n;
  out["d"] = v.d;
  if (v.p) out["p"] = v.p->get_str();
  out["wagstaff_type"] = v.wagstaff_type;
  if (v.status == TorelliVerdict::Status::ok) {
    out["extremal"] = v.extremality->extremal;
    Json stab = Json::array();
    for (std::uint64_t m : v.stab->stabilizer) stab.push_back(std::to_string(m));
    out["stabilizer"] = std::move(stab);
    out["generated_by_1_minus_d"] = v.generated_by_1_minus_d;
    out["condition_holds"] = v.condition_holds;
    out["excluded_case"] = v.excluded_case;
    out["tuples_enumerated"] = v.tuples_needed.get_str();
  } else {
    out["error"] = v.status == TorelliVerdict::Status::budget_exceeded
                       ? "budget_exceeded"
                       : "not_wagstaff_type";
    out["detail"] = v.gate_message;
    out["excluded_case"] = v.excluded_case;
    if (v.status == TorelliVerdict::Status::budget_exceeded) {
      out["tuples_needed"] = v.tuples_needed.get_str();
      out["budget"] = std::to_string(v.budget);
    }
  }
  return out;
}

}  // namespace hyperaut
