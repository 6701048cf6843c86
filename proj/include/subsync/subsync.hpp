#pragma once

#include <subsync/state_set.hpp>
#include <subsync/automaton.hpp>
#include <subsync/graph.hpp>
#include <subsync/text_format.hpp>
#include <subsync/search.hpp>
#include <subsync/structure.hpp>
#include <subsync/directing.hpp>
#include <subsync/composition.hpp>
#include <subsync/oracle.hpp>
#include <subsync/de_bruijn.hpp>
#include <subsync/families.hpp>
#include <subsync/reductions.hpp>
#include <subsync/chain.hpp>
#include <subsync/random.hpp>
#include <subsync/experiments.hpp>
