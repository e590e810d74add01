// Evaluation and read errors. The message is always a complete sentence
// meant for a learner, never host-language jargon; position fields let the
// front ends point at the offending token when one exists.
#pragma once

#include <stdexcept>
#include <string>

namespace concat {

class Error : public std::runtime_error {
public:
    explicit Error(std::string sentence, int line = 0, int col = 0, int source = -1)
        : std::runtime_error(sentence),
          sentence(std::move(sentence)),
          line(line),
          col(col),
          source(source)
    {
    }

    std::string sentence;
    int line = 0;
    int col = 0;
    int source = -1;
};

} // namespace concat
