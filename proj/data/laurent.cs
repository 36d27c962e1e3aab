kind: corner-skew
name: laurent
[basis]
one
[product]
one one: 1 one
[unit]
1 one
[idempotent]
1 one
[alpha]
one: 1 one
