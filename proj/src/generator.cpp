#include "erc/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>

#include "erc/census.hpp"
#include "erc/enrichment.hpp"

namespace erc {

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const GeneratorLimits& limits) : rng_(seed), limits_(limits) {}

  ERModel run() {
    const std::size_t set_count = uniform(1, std::max<std::size_t>(1, limits_.max_sets));
    model_.diagrams.resize(set_count > 8 && chance(0.5) ? 2 : 1);
    for (std::size_t i = 0; i < model_.diagrams.size(); ++i)
      model_.diagrams[i].name = "D" + std::to_string(i + 1);

    plan_sets(set_count);
    for (std::size_t i = 0; i < set_count; ++i)
      fill_set(i);
    for (std::size_t i = 0; i < set_count; ++i)
      restrict_set(i);
    others();

    for (std::size_t i = 0; i < set_count; ++i)
      model_.diagrams[i * model_.diagrams.size() / set_count].sets.push_back(std::move(sets_[i]));
    return std::move(model_);
  }

 private:
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[uniform(0, items.size() - 1)];
  }

  bool restriction_budget() const { return model_.restrictions.size() < limits_.max_restrictions; }

  std::string next_label() {
    char buf[16];
    std::snprintf(buf, sizeof buf, "R%02zu", model_.restrictions.size() + 1);
    return buf;
  }

  void restrict(std::string target, RestrictionBody body) {
    model_.restrictions.push_back({next_label(), std::move(target), std::move(body), {}});
  }

  void plan_sets(std::size_t n) {
    sets_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      ObjectSet& s = sets_[i];
      const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (i == 0 || n < 2 || roll < 0.55) {
        s.kind = SetKind::Entity;
        s.name = "ENT" + std::to_string(i + 1);
      } else if (roll < 0.9) {
        s.kind = SetKind::Relationship;
        s.name = "REL" + std::to_string(i + 1);
      } else {
        s.kind = SetKind::Computed;
        s.name = "CMP" + std::to_string(i + 1);
        s.definition = chance(0.9) ? "SELECT * FROM " + sets_[0].name : "";
      }
      if (s.kind != SetKind::Computed || !s.definition.empty())
        targets_.push_back(i);
    }
  }

  std::string target_other_than(std::size_t self) {
    std::vector<std::size_t> choices;
    for (std::size_t t : targets_)
      if (t != self)
        choices.push_back(t);
    if (choices.empty())
      return {};
    return sets_[pick(choices)].name;
  }

  Range random_range() {
    switch (uniform(0, 4)) {
      case 0: {
        const auto lo = static_cast<long long>(uniform(0, 100)) - 20;
        const auto hi = lo + static_cast<long long>(uniform(0, 1000));
        return Range::interval(Bound::integer(std::to_string(lo)), Bound::integer(std::to_string(hi)));
      }
      case 1:
        return Range::interval(Bound::integer("1"), Bound::integer("10^" + std::to_string(uniform(1, 9))));
      case 2: {
        const std::string lo = std::to_string(uniform(1, 28)) + "/" + std::to_string(uniform(1, 12)) + "/20" +
                               std::to_string(uniform(10, 19));
        return Range::interval(Bound::date(lo), chance(0.5) ? Bound::function("SysDate()") : Bound::date("31/12/2030"));
      }
      case 3:
        return Range::ascii(static_cast<int>(uniform(1, 255)));
      default:
        return Range::nat(static_cast<int>(uniform(1, 12)));
    }
  }

  void fill_set(std::size_t i) {
    ObjectSet& s = sets_[i];
    if (s.kind == SetKind::Relationship) {
      const std::size_t roles = chance(0.75) ? 2 : 3;
      for (std::size_t r = 0; r < roles; ++r) {
        Role role;
        role.name = "r" + std::to_string(i + 1) + "_" + std::to_string(r + 1);
        role.target = target_other_than(i);
        role.declared_unique = roles == 2 && r == 0 && chance(0.08);
        s.roles.push_back(std::move(role));
      }
    }

    const std::size_t room = limits_.max_attributes - attribute_count_;
    const std::size_t attrs = room == 0 ? 0 : uniform(0, std::min<std::size_t>(room, 6));
    for (std::size_t a = 0; a < attrs; ++a) {
      Attribute attr;
      attr.name = "A" + std::to_string(++attribute_count_);
      if (chance(0.1)) {
        attr.computed = true;
        attr.definition = chance(0.85) ? "COUNT(*)" : "";
      } else {
        const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
        if (roll < 0.3)
          attr.range = random_range();
        else if (roll < 0.7 && restriction_budget())
          restrict(s.name, RangeBody{attr.name, random_range()});
        value_attributes_[i].push_back(attr.name);
      }
      s.attributes.push_back(std::move(attr));
    }

    if (chance(0.2)) {
      const std::size_t fns = uniform(1, 2);
      for (std::size_t f = 0; f < fns; ++f) {
        std::string target = chance(0.1) ? s.name : target_other_than(i);
        if (target.empty())
          target = s.name;
        StructuralFunction fn;
        fn.name = "f" + std::to_string(i + 1) + "_" + std::to_string(f + 1);
        fn.source = s.name;
        fn.target = std::move(target);
        if (chance(0.15)) {
          fn.computed = true;
          fn.definition = chance(0.8) ? "lookup()" : "";
        }
        s.functions.push_back(std::move(fn));
      }
    }

    if (s.kind == SetKind::Entity && chance(0.1)) {
      const std::string sup = target_other_than(i);
      if (!sup.empty())
        s.included_in.push_back(sup);
    }

    if (s.kind != SetKind::Computed) {
      const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      const std::uint64_t card = chance(0.05) ? 100'000'000'000ULL : std::uint64_t{1} << uniform(1, 40);
      if (roll < 0.4)
        s.max_cardinality = card;
      else if (roll < 0.7 && restriction_budget())
        restrict(s.name, CardinalityBody{card});
    }
  }

  // Mappings a restriction may name: fundamental attributes, roles and
  // functions with definitions.
  std::vector<std::string> nameable(const ObjectSet& s) {
    std::vector<std::string> out;
    for (const auto& r : s.roles)
      out.push_back(r.name);
    for (const auto& f : s.functions)
      if (!f.computed || !f.definition.empty())
        out.push_back(f.name);
    for (const auto& a : s.attributes)
      if (!a.computed || !a.definition.empty())
        out.push_back(a.name);
    return out;
  }

  std::vector<std::string> distinct(const std::vector<std::string>& from, std::size_t n) {
    std::vector<std::string> copy = from;
    std::shuffle(copy.begin(), copy.end(), rng_);
    copy.resize(std::min(n, copy.size()));
    return copy;
  }

  void restrict_set(std::size_t i) {
    const ObjectSet& s = sets_[i];
    const auto names = nameable(s);
    if (names.empty())
      return;
    std::set<std::set<std::string>> used;
    if (chance(0.6) && restriction_budget())
      restrict(s.name, CompulsoryBody{distinct(names, uniform(1, names.size()))});
    if (chance(0.5) && restriction_budget()) {
      auto one = distinct(names, 1);
      used.insert({one.begin(), one.end()});
      restrict(s.name, UniquenessBody{one});
    }
    if (names.size() >= 2 && chance(0.4) && restriction_budget()) {
      auto many = distinct(names, uniform(2, std::min<std::size_t>(3, names.size())));
      if (used.insert({many.begin(), many.end()}).second)
        restrict(s.name, UniquenessBody{many});
    }
    if (chance(0.05) && restriction_budget() && s.kind == SetKind::Entity) {
      const std::string sup = target_other_than(i);
      if (!sup.empty() && std::find(s.included_in.begin(), s.included_in.end(), sup) == s.included_in.end())
        restrict(s.name, InclusionBody{sup});
    }
    const auto& values = value_attributes_[i];
    const bool droppable = s.kind == SetKind::Computed && s.definition.empty();
    if (!values.empty() && !droppable && chance(0.3) && restriction_budget()) {
      std::string text = "(forall x in " + s.name + ")(";
      if (values.size() >= 2 && chance(0.5))
        text += values[0] + "(x) <> " + values[1] + "(x)";
      else
        text += values[0] + "(x) = " + values[0] + "(x) | x = x";
      text += ")";
      restrict(chance(0.7) ? s.name : "", OtherBody{"tuple rule", parse_formula(text).formula});
    }
  }

  void others() {
    std::vector<std::size_t> with_values;
    for (const auto& [i, values] : value_attributes_)
      if (!values.empty() && (sets_[i].kind != SetKind::Computed || !sets_[i].definition.empty()))
        with_values.push_back(i);
    const std::size_t count = uniform(0, 3);
    for (std::size_t k = 0; k < count && restriction_budget(); ++k) {
      if (with_values.empty() || chance(0.25)) {
        restrict("", OtherBody{"a business rule nobody formalized", std::nullopt});
        continue;
      }
      const std::size_t a = pick(with_values);
      const std::size_t b = pick(with_values);
      std::string text;
      if (a == b)
        text = "(forall x, y in " + sets_[a].name + ")(x <> y => " + value_attributes_[a][0] + "(x) <> " +
               value_attributes_[a][0] + "(y))";
      else
        text = "(forall x in " + sets_[a].name + ")(forall y in " + sets_[b].name + ")(" +
               value_attributes_[a][0] + "(x) <> " + value_attributes_[b][0] + "(y))";
      restrict("", OtherBody{"", parse_formula(text).formula});
    }
  }

  std::mt19937_64 rng_;
  GeneratorLimits limits_;
  ERModel model_;
  std::vector<ObjectSet> sets_;
  std::vector<std::size_t> targets_;
  std::map<std::size_t, std::vector<std::string>> value_attributes_;
  std::size_t attribute_count_ = 0;
};

std::size_t effective_total(const ERModel& model) {
  QuestionSession batch;
  const auto defaults = apply_input_defaults(model, kDefaultDbmsMaxCardinality, batch);
  return take_census(defaults.model, CompulsoryCounting::PerMapping).tally.total();
}

}  // namespace

ERModel generate_model(std::uint64_t seed, const GeneratorLimits& limits) { return Generator(seed, limits).run(); }

ERModel generate_model_of_size(std::uint64_t seed, std::size_t elements) {
  elements = std::max<std::size_t>(elements, 1);
  GeneratorLimits limits{std::max<std::size_t>(1, elements / 12), std::max<std::size_t>(1, elements / 4),
                         std::max<std::size_t>(1, elements / 8)};
  ERModel model;
  std::size_t total = 0;
  for (int attempt = 0; attempt < 16; ++attempt) {
    ERModel candidate = generate_model(seed + static_cast<std::uint64_t>(attempt), limits);
    const std::size_t t = effective_total(candidate);
    if (t <= elements) {
      model = std::move(candidate);
      total = t;
      break;
    }
    limits = {std::max<std::size_t>(1, limits.max_sets / 2), limits.max_attributes / 2, limits.max_restrictions / 2};
  }
  if (model.diagrams.empty())
    model.diagrams.push_back({"D1", {}});

  // Pad with plain entity sets: one element per set and per attribute.
  std::size_t remaining = elements - total;
  for (std::size_t n = 1; remaining > 0; ++n) {
    ObjectSet pad;
    pad.name = "PAD" + std::to_string(n);
    pad.max_cardinality = 1000;
    --remaining;
    for (std::size_t a = 1; remaining > 0 && a <= 20; ++a, --remaining)
      pad.attributes.push_back({"P" + std::to_string(n) + "_" + std::to_string(a), Range::ascii(40), false, "", {}});
    model.diagrams.back().sets.push_back(std::move(pad));
  }
  return model;
}

}  // namespace erc
