#pragma once

#include "bounds.hpp"
#include "classical.hpp"
#include "countermodel.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "hilbert.hpp"
#include "kripke.hpp"
#include "measure.hpp"
#include "modal.hpp"
#include "period.hpp"
#include "prover.hpp"
#include "random.hpp"
#include "sequent.hpp"
#include "sharing.hpp"
#include "substitution.hpp"
#include "text.hpp"
#include "tnorm.hpp"
#include "verdict.hpp"
#include "xformula.hpp"
