"""Recipes turning a 3-ary relation R with 110 in R and 010 not in R into a 1-isolating one.

One line per relation: its members, then how to obtain a 1-isolating
relation by identifying variables and conjoining permuted copies.  The
recipes are re-checked when the table is loaded (see ``gadgets``).
"""

RECIPES = """
{110}: already 1-isolating
{000 110}: already 1-isolating
{100 110}: identify x1,x2 -> {10}
{000 100 110}: R(x1,x2,x3) AND R(x2,x1,x3) = {000 110}
{110 001}: already 1-isolating
{000 110 001}: already 1-isolating
{100 110 001}: already 1-isolating
{000 100 110 001}: R(x1,x2,x3) AND R(x2,x1,x3) = {000 110 001}
{110 101}: already 1-isolating
{000 110 101}: already 1-isolating
{100 110 101}: identify x1,x2 -> {10}
{000 100 110 101}: R(x1,x2,x3) AND R(x2,x1,x3) = {000 110}
{110 001 101}: already 1-isolating
{000 110 001 101}: already 1-isolating
{100 110 001 101}: identify x1,x2 -> {10 01}
{000 100 110 001 101}: R(x1,x2,x3) AND R(x2,x1,x3) = {000 110 001}
{110 011}: already 1-isolating
{000 110 011}: already 1-isolating
{100 110 011}: already 1-isolating
{000 100 110 011}: already 1-isolating
{110 001 011}: already 1-isolating
{000 110 001 011}: already 1-isolating
{100 110 001 011}: identify x1,x2 -> {10 01}
{000 100 110 001 011}: R(x1,x2,x3) AND R(x1,x3,x2) = {000 100 011}
{110 101 011}: already 1-isolating
{000 110 101 011}: already 1-isolating
{100 110 101 011}: already 1-isolating
{000 100 110 101 011}: already 1-isolating
{110 001 101 011}: already 1-isolating
{000 110 001 101 011}: already 1-isolating
{100 110 001 101 011}: identify x1,x2 -> {10 01}
{000 100 110 001 101 011}: R(x1,x2,x3) AND R(x1,x3,x2) = {000 100 110 101 011}
{110 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 110 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{100 110 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 100 110 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{110 001 111}: already 1-isolating
{000 110 001 111}: identify x1,x3 -> {00 11}
{100 110 001 111}: already 1-isolating
{000 100 110 001 111}: identify x1,x3 -> {00 11}
{110 101 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 110 101 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{100 110 101 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 100 110 101 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{110 001 101 111}: identify x1,x3 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 110 001 101 111}: identify x1,x3 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{100 110 001 101 111}: identify x1,x3 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 100 110 001 101 111}: identify x1,x3 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{110 011 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 110 011 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{100 110 011 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 100 110 011 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{110 001 011 111}: identify x1,x3 -> {11}
{000 110 001 011 111}: identify x1,x3 -> {00 11}
{100 110 001 011 111}: identify x1,x3 -> {11}
{000 100 110 001 011 111}: identify x1,x3 -> {00 11}
{110 101 011 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 110 101 011 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{100 110 101 011 111}: identify x1,x2 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 100 110 101 011 111}: identify x1,x2 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{110 001 101 011 111}: identify x1,x3 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 110 001 101 011 111}: identify x1,x3 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
{100 110 001 101 011 111}: identify x1,x3 -> {10 11}, then R(x1,x2) AND R(x2,x1) = {11}
{000 100 110 001 101 011 111}: identify x1,x3 -> {00 10 11}, then R(x1,x2) AND R(x2,x1) = {00 11}
"""
