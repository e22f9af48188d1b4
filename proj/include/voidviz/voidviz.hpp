#pragma once

// Umbrella header: VoID description in, SVG diagram out.

#include "voidviz/iri.hpp"
#include "voidviz/layout.hpp"
#include "voidviz/parser.hpp"
#include "voidviz/rdf.hpp"
#include "voidviz/svg.hpp"
#include "voidviz/void_model.hpp"
