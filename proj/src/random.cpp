#include "netevo/random.hpp"

#include <sstream>
#include <stdexcept>

namespace netevo {

std::string save_rng(const Rng& rng) {
    std::ostringstream out;
    out << rng;
    return out.str();
}

Rng load_rng(const std::string& text) {
    std::istringstream in(text);
    Rng rng;
    in >> rng;
    if (!in) throw std::invalid_argument("malformed random engine state");
    return rng;
}

}  // namespace netevo
