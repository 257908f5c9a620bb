// Generate one gcd problem in English and German, then grade two replies.
//   ./build/polytask_samples
#include <iostream>

#include "polytask/suite.hpp"

int main() {
  polytask::Suite suite;
  for (auto lang : {polytask::Language::en, polytask::Language::de}) {
    polytask::GenerationRequest req;
    req.task_id = "gcd";
    req.language = lang;
    req.dataset_seed = 7;
    req.index = 0;
    req.difficulty = polytask::Difficulty::percentile(25);
    const auto inst = suite.engine().generate_instance(req);
    std::cout << "[" << polytask::to_string(lang) << "] " << inst.question << "\n";
    std::cout << "canonical answer: " << inst.answer.dump() << "\n";

    const auto good = suite.verifier().verify(inst, "Final answer: " + inst.answer.dump());
    const auto bad = suite.verifier().verify(inst, "I am not sure.");
    std::cout << "good reply -> " << polytask::safe_dump(polytask::to_json(good)) << "\n";
    std::cout << "bad reply  -> " << polytask::safe_dump(polytask::to_json(bad)) << "\n\n";
  }
}
