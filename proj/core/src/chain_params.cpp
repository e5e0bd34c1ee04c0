#include "chaineq/chain_params.hpp"

#include <stdexcept>

namespace chaineq {

void ChainParams::validate() const {
    if (n < 2)
        throw std::invalid_argument("ChainParams: n must be >= 2");
    if (!(length > 0.0))
        throw std::invalid_argument("ChainParams: length must be > 0");
    if (!(mass > 0.0))
        throw std::invalid_argument("ChainParams: mass must be > 0");
    if (!(damping >= 0.0))
        throw std::invalid_argument("ChainParams: damping must be >= 0");
}

} // namespace chaineq
