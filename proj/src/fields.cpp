#include "psmech/fields.hpp"

// The expression-backed fields are header-only; this TU anchors the vtables.

namespace psmech {

static_assert(sizeof(ExprScalarField) > 0);

}  // namespace psmech
