#pragma once

#include "trigconv/summation.hpp"
#include "trigconv/random.hpp"
#include "trigconv/sequence.hpp"
#include "trigconv/classifiers.hpp"
#include "trigconv/series.hpp"
#include "trigconv/harness.hpp"
#include "trigconv/io.hpp"
