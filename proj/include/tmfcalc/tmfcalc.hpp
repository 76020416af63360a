#ifndef TMFCALC_TMFCALC_HPP
#define TMFCALC_TMFCALC_HPP

#include <tmfcalc/core/parallel.hpp>
#include <tmfcalc/core/ring.hpp>
#include <tmfcalc/series/laurent.hpp>
#include <tmfcalc/series/laurent_unit.hpp>
#include <tmfcalc/series/monomial.hpp>
#include <tmfcalc/series/multi_series.hpp>
#include <tmfcalc/series/qseries.hpp>
#include <tmfcalc/series/text_format.hpp>
#include <tmfcalc/fgl/formal_group.hpp>
#include <tmfcalc/fgl/valuation.hpp>
#include <tmfcalc/fgl/weierstrass.hpp>
#include <tmfcalc/linalg/smith.hpp>
#include <tmfcalc/cocycle/aug_ideal.hpp>
#include <tmfcalc/cocycle/cocycles.hpp>
#include <tmfcalc/theta/cube_section.hpp>
#include <tmfcalc/theta/theta.hpp>
#include <tmfcalc/mf/modular_forms.hpp>
#include <tmfcalc/witten/witten.hpp>
#include <tmfcalc/atkin/atkin.hpp>

#endif
