#pragma once

#include <memory>

#include "polytask/core/registry.hpp"
#include "polytask/tasks/chain_sum.hpp"
#include "polytask/tasks/corpus.hpp"
#include "polytask/tasks/count_bits.hpp"
#include "polytask/tasks/game_of_life.hpp"
#include "polytask/tasks/gcd.hpp"
#include "polytask/tasks/group_anagrams.hpp"
#include "polytask/tasks/isomorphic_strings.hpp"
#include "polytask/tasks/leg_counting.hpp"
#include "polytask/tasks/letter_counting.hpp"
#include "polytask/tasks/number_sequence.hpp"
#include "polytask/tasks/simple_equations.hpp"
#include "polytask/tasks/spell_backward.hpp"
#include "polytask/tasks/spiral_matrix.hpp"
#include "polytask/tasks/syllogism.hpp"
#include "polytask/tasks/word_sorting.hpp"

namespace polytask {

inline void register_builtin_tasks(TaskRegistry& registry, const std::shared_ptr<const Corpus>& corpus) {
  using namespace tasks;
  registry.register_task(std::make_shared<Gcd>());
  registry.register_task(std::make_shared<CountBits>());
  registry.register_task(std::make_shared<ChainSum>());
  registry.register_task(std::make_shared<LegCounting>());
  registry.register_task(std::make_shared<NumberSequence>());
  registry.register_task(std::make_shared<SimpleEquations>());
  registry.register_task(std::make_shared<IsomorphicStrings>());
  registry.register_task(std::make_shared<SpellBackward>(corpus));
  registry.register_task(std::make_shared<LetterCounting>(corpus));
  registry.register_task(std::make_shared<GroupAnagrams>(corpus));
  registry.register_task(std::make_shared<WordSorting>(corpus));
  registry.register_task(std::make_shared<SpiralMatrix>());
  registry.register_task(std::make_shared<GameOfLife>());
  registry.register_task(std::make_shared<Syllogism>());
}

}  // namespace polytask
