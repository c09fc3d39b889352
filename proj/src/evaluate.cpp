#include "fls/evaluate.hpp"

#include "fls/error.hpp"

namespace fls {

EvalOutcome evaluate(const Interpreter& in, const EvalRequest& r) {
  const TypeIndexing& ix = in.indexing();
  const Context ctx = parse_context(r.context);
  const Term term = parse_term(r.term);
  const Type type = infer_type(ctx, term);
  EvalOutcome out;
  out.judgement = render_context(ctx) + " |- " + term.str() + " : " + type.str();
  if (!is_core_judgement(ctx, term, in.interpretation().classifier())) {
    throw Error(ErrorKind::NotCoreFragment, out.judgement);
  }

  std::vector<Index> stage;
  if (r.stage.empty()) {
    for (const Type& t : ctx) stage.push_back(ix.poset(t).top());
  } else {
    stage = ix.parse_stage(ctx, r.stage);
  }
  if (r.values.size() != ctx.size()) {
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(ctx.size()) + " value(s), got " +
                                           std::to_string(r.values.size()));
  }
  std::vector<Value> env;
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    std::string text = r.values[k];
    if (text.find('@') == std::string::npos) text += "@" + ix.poset(ctx[k]).id(stage[k]);
    const auto at = text.rfind('@');
    const State s = in.interp_type(ctx[k])->sys.find_state(text.substr(at + 1), text.substr(0, at));
    if (s.index != stage[k]) throw Error(ErrorKind::StateMismatch, r.values[k] + " is not at the stage index");
    env.push_back(in.from_state(ctx[k], s));
  }
  const std::vector<Value> limit_env = in.embed_env(ctx, stage, env);
  const TypeModel& model = in.model(type);

  if (r.stage_value) {
    Index result = 0;
    if (r.at.empty()) {
      const auto found = enumerate_states(ix, ctx, term, stage);
      if (found.empty()) throw Error(ErrorKind::Underivable, "no result index at " + ix.render_stage(ctx, stage));
      result = found.back().first;
      for (const auto& entry : found)
        if (entry.first == ix.poset(type).top()) result = entry.first;
    } else {
      result = ix.poset(type).find(r.at);
    }
    const auto d = derive_state(ix, ctx, term, stage, result);
    out.state_judgement = ix.render_stage(ctx, stage) + " |- " + term.str() + " => " + ix.poset(type).id(result);
    out.stage = model.render_stage(result, in.eval_stage_value(*d, env));
    if (r.limit_value) out.reflection = in.check_reflection(*d, env, limit_env);
  }
  if (r.limit_value) out.limit = model.render_limit(in.eval_limit_value(ctx, term, limit_env));
  return out;
}

}  // namespace fls
