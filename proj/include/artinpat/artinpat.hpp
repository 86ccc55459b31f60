#pragma once

#include "artinpat/error.hpp"
#include "artinpat/presentation.hpp"
#include "artinpat/collector.hpp"
#include "artinpat/group.hpp"
#include "artinpat/subgroup.hpp"
#include "artinpat/abelian.hpp"
#include "artinpat/hom.hpp"
#include "artinpat/quotient.hpp"
#include "artinpat/induced.hpp"
#include "artinpat/isomorphism.hpp"
#include "artinpat/transversal.hpp"
#include "artinpat/transfer.hpp"
#include "artinpat/layers.hpp"
#include "artinpat/pattern.hpp"
#include "artinpat/tree.hpp"
#include "artinpat/catalog.hpp"
#include "artinpat/search.hpp"
#include "artinpat/report.hpp"
#include "artinpat/laws.hpp"
