import parsy


space = parsy.regex(r'[ \t]*').result('')

digits = parsy.regex(r'[0-9]+').map(int).desc('digits')

sign = parsy.regex(r'[+-]').desc('sign')
